#pragma once

// Quasi-particle partition sums: truncated evaluation of
//   sum_{N in Z_{>=0}^n} (-1)^{e(N)} z^{B N} q^{(1/2) N^T G N - a.N} / prod_i (q)_{N_i}
// together with an independent Fock-space state counter for the bundled
// free-fermion mode systems, and the dilogarithm central-charge evaluator.

#include <vector>

#include "qchar/qseries.hpp"

namespace qchar {

using Mat = std::vector<std::vector<Rat>>;

// Sum over N >= 0 of (-1)^{|N|·alt} q^{(1/2) N^T G N - a.N} / prod (q)_{N_i},
// exact strictly below T.  Requires all off-diagonal entries of G to be
// >= 0 and all diagonal entries > 0 (used for enumeration bounds).
QSeries ucpf_sum(const Mat& gram, const std::vector<Rat>& a, bool alternating,
                 const Rat& T);

// Same sum with a per-species sign mask: the term for N carries
// (-1)^{sum_i mask_i N_i}.  An empty mask means all signs +1.
QSeries ucpf_sum_signed(const Mat& gram, const std::vector<Rat>& a,
                        const std::vector<int>& mask, const Rat& T);

// Same sum with z-variables: variable v carries exponent sum_i zw[v][i] N_i.
MultiSeries ucpf_sum_z(const Mat& gram, const std::vector<Rat>& a,
                       const std::vector<std::vector<Rat>>& zw,
                       bool alternating, const Rat& T);

// Mode systems of coupled free fermions.  Each family lists, per species,
// a mode ladder whose base energy depends on the occupation numbers of the
// earlier species; states are strictly ordered mode choices within a species.
enum class FockFamily {
    Sl3Untwisted,  // three species, all ladders start at 1/2
    Sl3Twisted,    // species 2,3 ladders start at 0
    Sl4Untwisted,  // six species, all ladders start at 1/2
    Sl4Sixth,      // species 2,4,5,6 ladders start at 0
    Sl4Eighth,     // species 1,2,5 ladders start at 0
};

// Direct state count: enumerates occupation numbers and excitations and
// tallies energies, without reference to any Gram matrix.
QSeries fock_basis_count(FockFamily family, const Rat& T);

// Effective central charge (6/pi^2) sum_a [Li2(xi_a) + (1/2) ln xi_a ln(1-xi_a)]
// where xi solves the TBA-type system xi_a = prod_b (1-xi_b)^{G_ab}.
double dilog_central_charge(const std::vector<std::vector<double>>& gram);

}  // namespace qchar
