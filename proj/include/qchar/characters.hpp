#pragma once

#include "qchar/affine.hpp"
#include "qchar/blocks.hpp"

namespace qchar {

// Virasoro minimal-model character chi^{p,p'}_{r,s} (coprime p < p',
// 1 <= r < p, 1 <= s < p'): eta(tau)^{-1} * sum_{k in Z}
// (q^{(2pp'k + p'r - ps)^2/(4pp')} - q^{(2pp'k + p'r + ps)^2/(4pp')}).
QSeries minimal_char(long long p, long long pp, long long r, long long s, const Rat& T);

// Central charge 1 - 6(p-p')^2/(pp') and conformal weight of (r,s).
Rat minimal_cc(long long p, long long pp);
Rat minimal_h(long long p, long long pp, long long r, long long s);

// Character of the module with the given conformal weight; resolves (r,s)
// from h.  Throws if h does not occur in the Kac table.
QSeries minimal_char_by_h(long long p, long long pp, const Rat& h, const Rat& T);

// Free-fermion characters (Ramond/Neveu-Schwarz combinations):
//   chi_0 + chi_{1/2} = q^{-1/48} prod (1 + q^{n-1/2})
//   chi_0 - chi_{1/2} = q^{-1/48} prod (1 - q^{n-1/2})
//   sigma sector       = 2 q^{1/24} prod (1 + q^n)
QSeries free_fermion_sum(const Rat& T);
QSeries free_fermion_diff(const Rat& T);
QSeries free_fermion_sigma(const Rat& T);

// W_3 minimal-model character at c = 2 - 24/(m(m+1)) for the module labelled
// by finite sl(3) weights (Lp at level m-3, Lm at level m-2):
//   eta^{-2} sum_{gamma in Q, w in W} det(w)
//     q^{|(m+1)(w(Lp+rho) + m*gamma) - m(Lm+rho)|^2 / (2m(m+1))}.
QSeries w3_character(long long m, const Labels& Lp, const Labels& Lm, const Rat& T);
Rat w3_cc(long long m);
Rat w3_h(long long m, const Labels& Lp, const Labels& Lm);

// Character of the lattice vertex algebra module V_{shift+Gamma} for a
// positive definite Gram matrix: eta^{-d} * theta.
QSeries lattice_character(const std::vector<std::vector<Rat>>& gram,
                          const std::vector<Rat>& shift, const Rat& T);

// Multivariate free-fermion characters for the adjoint system of sl(n+1):
// one fermion per positive root, z_i tracking e^{alpha_i}.
//
// Ramond sector:
//   q^{-dim/48} e^{rho} prod_{a>0} (1+e^{-a})
//     prod_{k>=1} (1+q^k)^n prod_{a>0} (1+e^a q^k)(1+e^{-a} q^k)
MultiSeries fermion_multichar_R(int n, const Rat& T);
// Neveu-Schwarz sector (sign=+1 or -1):
//   q^{-dim/48} prod_{k>=1} (1 +- q^{k-1/2})^n
//     prod_{a>0} (1 +- e^a q^{k-1/2})(1 +- e^{-a} q^{k-1/2})
MultiSeries fermion_multichar_NS(int n, int sign, const Rat& T);

// z-exponent vector of e^{rho} (root coordinates), the Ramond extraction target.
std::vector<Rat> rho_root_coords(int n);

// Parafermion (coset) conformal weight
// (Lambda, Lambda+2rho)/(2(k+h)) - |lambda|^2/(2k) + integer offset.
Rat parafermion_weight(const RootSystemA& rs, long long k, const Labels& Lambda,
                       const Labels& lambda, long long offset);

} // namespace qchar
