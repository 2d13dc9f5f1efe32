#pragma once

#include "qchar/qseries.hpp"

namespace qchar {

// Finite Pochhammer-type product prod_{j=0}^{count-1} (1 - coeff * q^{aexp + step*j}),
// truncated at T.  For (a; q^s)_m with a = c q^r, call with (c, r, s, m).
QSeries poch_finite(const Rat& coeff, const Rat& aexp, const Rat& step,
                    long long count, const Rat& T);

// Infinite product prod_{j>=0} (1 - coeff * q^{aexp + step*j}) truncated at T.
// Requires step > 0 and aexp > 0 so that only finitely many factors matter.
QSeries poch_inf(const Rat& coeff, const Rat& aexp, const Rat& step, const Rat& T);

// Euler product (q; q)_inf via the pentagonal-number series.
QSeries euler_phi(const Rat& T);

// Dedekind eta of m*tau as a q-series: q^{m/24} prod_{k>=1} (1 - q^{mk}),
// computed by the pentagonal-number series.  m > 0 rational.
QSeries eta(const Rat& m, const Rat& T);

// prod_i eta(m_i tau)^{e_i}; internally padded so the result is exact below T.
QSeries eta_quotient(const std::vector<std::pair<Rat, int>>& factors, const Rat& T);

// Gaussian binomial coefficient [l choose m]_q as an exact polynomial.
QSeries gaussian_binomial(long long l, long long m);

// Multivariate Pochhammer products with a fixed Laurent monomial argument:
// prod_{j=0}^{count-1} (1 - coeff * z^{zexp} q^{qexp + qstep*j}).
MultiSeries ms_poch_finite(int nvars, const Rat& coeff, const Rat& qexp,
                           const std::vector<Rat>& zexp, const Rat& qstep,
                           long long count, const Rat& T);
// Infinite version; requires qstep > 0 and qexp >= 0.
MultiSeries ms_poch_inf(int nvars, const Rat& coeff, const Rat& qexp,
                        const std::vector<Rat>& zexp, const Rat& qstep, const Rat& T);

// All integer vectors n with (1/2)(n+shift)^T G (n+shift) < T for a positive
// definite symmetric rational Gram matrix G.  Box bound from the smallest
// eigenvalue (float), membership decided exactly.
std::vector<std::vector<long long>> lattice_points_below(
    const std::vector<std::vector<Rat>>& gram, const std::vector<Rat>& shift,
    const Rat& T);

// Value of (1/2) x^T G x for rational x.
Rat quadratic_value(const std::vector<std::vector<Rat>>& gram,
                    const std::vector<Rat>& x);

// Lattice theta series sum_{n in Z^d} sign(n) q^{(1/2)(n+shift)^T G (n+shift)},
// where sign(n) = (-1)^{twist . n} if twist is given, else 1.
QSeries theta_lattice(const std::vector<std::vector<Rat>>& gram,
                      const std::vector<Rat>& shift, const Rat& T,
                      const std::vector<long long>* twist = nullptr);

// Smallest eigenvalue of a symmetric matrix (cyclic Jacobi, double precision).
double symmetric_min_eigenvalue(std::vector<std::vector<double>> a);

} // namespace qchar
