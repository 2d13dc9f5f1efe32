#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace qchar {

// Exact rational coefficients.  GMP-backed so large eta-quotient
// numerators never overflow.
using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

inline Rat rat(long long num, long long den = 1) {
    if (den == 0) throw std::invalid_argument("rat: zero denominator");
    return Rat(num, den);
}

// Floor of a rational as a machine integer (exponents always fit in i64).
inline long long rat_floor(const Rat& r) {
    Int q = numerator(r) / denominator(r);
    if (numerator(r) < 0 && numerator(r) % denominator(r) != 0) q -= 1;
    return q.convert_to<long long>();
}

inline long long rat_ceil(const Rat& r) { return -rat_floor(-r); }

// r as integer; throws unless r is actually integral.
inline long long rat_to_int(const Rat& r) {
    if (denominator(r) != 1) throw std::domain_error("rat_to_int: not an integer");
    return numerator(r).convert_to<long long>();
}

inline double rat_to_double(const Rat& r) { return r.convert_to<double>(); }

} // namespace qchar
