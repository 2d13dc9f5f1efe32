#pragma once

#include "qchar/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qchar {

// Truncated power series in q with exact rational coefficients and
// rational exponents.
//
// Representation: exponents are integers over a per-series denominator
// `den` (exponent key k stands for q^{k/den}), kept minimal by dividing
// out the gcd of all keys.  The truncation `cut` means: every term with
// exponent strictly below `cut` is stored exactly; nothing is known at
// or above it.  Exact polynomials carry an infinite cut.
//
// Truncation bookkeeping under arithmetic:
//   add/sub : cut = min(cut_a, cut_b)
//   mul     : cut = min(cut_a + ord_b, cut_b + ord_a)
//   inverse : cut = cut_a - 2*ord_a
// where ord is the least exponent with a nonzero coefficient (for a
// series with no stored terms, ord is only known to be >= cut, and the
// formulas use that bound).
class QSeries {
public:
    QSeries() : den_(1), infinite_(true) {}

    static QSeries zero(const Rat& cut);
    static QSeries zero_exact();
    // coeff * q^exp as an exact polynomial.
    static QSeries monomial(const Rat& coeff, const Rat& exp);
    static QSeries one() { return monomial(1, 0); }

    bool is_exact() const { return infinite_; }
    // Truncation bound; only valid when !is_exact().
    const Rat& cut() const { return cut_; }
    bool is_zero() const { return terms_.empty(); }

    // Least exponent with nonzero coefficient, if any term is stored.
    std::optional<Rat> ord() const;

    // Coefficient of q^e.  Throws if e is at or beyond the cut.
    Rat coeff(const Rat& e) const;

    // All stored (exponent, coefficient) pairs in increasing exponent order.
    std::vector<std::pair<Rat, Rat>> terms() const;
    size_t term_count() const { return terms_.size(); }

    QSeries operator-() const;
    QSeries operator+(const QSeries& o) const;
    QSeries operator-(const QSeries& o) const;
    QSeries operator*(const QSeries& o) const;
    QSeries& operator+=(const QSeries& o) { return *this = *this + o; }
    QSeries& operator-=(const QSeries& o) { return *this = *this - o; }
    QSeries& operator*=(const QSeries& o) { return *this = *this * o; }

    QSeries scaled(const Rat& c) const;      // multiply all coefficients by c
    QSeries shifted(const Rat& r) const;     // multiply by q^r
    QSeries scale_exponents(const Rat& m) const; // q -> q^m, m > 0

    // Multiplicative inverse; leading coefficient must be stored.
    QSeries inverse() const;
    QSeries pow(long long e) const;          // negative e via inverse

    // Restrict the cut to min(cut, T), discarding terms at or above T.
    QSeries truncated(const Rat& T) const;

    // First exponent below min(cut_a, cut_b, T) where coefficients differ,
    // or nullopt if the two series agree on that whole range.
    std::optional<Rat> first_mismatch(const QSeries& o, const Rat& T) const;
    bool agrees_with(const QSeries& o, const Rat& T) const {
        return !first_mismatch(o, T).has_value();
    }

    std::string str(size_t max_terms = 0) const;

private:
    long long den_;                // exponent denominator, >= 1
    bool infinite_;                // true: exact polynomial (no cut)
    Rat cut_;                      // valid when !infinite_
    std::map<long long, Rat> terms_; // key k -> coeff of q^{k/den_}

    void normalize();
    static long long align(QSeries& a, QSeries& b); // rescale both to lcm den
    friend class MultiSeries;
};

// Laurent series in q with exact coefficients in z_1..z_m (Laurent
// monomials, rational exponents).  Truncated in q only, with the same
// cut semantics as QSeries; exact in the z's.
class MultiSeries {
public:
    explicit MultiSeries(int nvars)
        : nvars_(nvars), qden_(1), zden_(1), infinite_(true) {}

    static MultiSeries zero(int nvars, const Rat& cut);
    static MultiSeries monomial(int nvars, const Rat& coeff, const Rat& qexp,
                                const std::vector<Rat>& zexp);
    static MultiSeries one(int nvars) { return monomial(nvars, 1, 0, std::vector<Rat>(nvars, 0)); }
    // Lift a pure q-series (z-degree zero in every variable).
    static MultiSeries lift(int nvars, const QSeries& s);

    int nvars() const { return nvars_; }
    bool is_exact() const { return infinite_; }
    const Rat& cut() const { return cut_; }
    bool is_zero() const { return terms_.empty(); }
    std::optional<Rat> qord() const;
    size_t term_count() const;

    MultiSeries operator-() const;
    MultiSeries operator+(const MultiSeries& o) const;
    MultiSeries operator-(const MultiSeries& o) const;
    MultiSeries operator*(const MultiSeries& o) const;
    MultiSeries& operator+=(const MultiSeries& o) { return *this = *this + o; }
    MultiSeries& operator-=(const MultiSeries& o) { return *this = *this - o; }
    MultiSeries& operator*=(const MultiSeries& o) { return *this = *this * o; }

    MultiSeries scaled(const Rat& c) const;
    MultiSeries scale_exponents(const Rat& m) const; // q -> q^m in q only, m > 0
    MultiSeries truncated(const Rat& T) const;

    // Extract the q-series multiplying z^zexp.
    QSeries coeff_z(const std::vector<Rat>& zexp) const;
    // Specialize every z variable to 1.
    QSeries eval_z_one() const;
    // Coefficient of q^e as a list of (z-exponent vector, coefficient).
    std::vector<std::pair<std::vector<Rat>, Rat>> coeff_q(const Rat& e) const;

    // First q-exponent below min(cuts, T) at which the z-polynomials
    // differ, or nullopt.
    std::optional<Rat> first_mismatch(const MultiSeries& o, const Rat& T) const;
    bool agrees_with(const MultiSeries& o, const Rat& T) const {
        return !first_mismatch(o, T).has_value();
    }

    std::string str(size_t max_qterms = 0) const;

private:
    int nvars_;
    long long qden_, zden_;
    bool infinite_;
    Rat cut_;
    // q-key -> (z-exponent key vector -> coefficient)
    std::map<long long, std::map<std::vector<long long>, Rat>> terms_;

    void normalize();
    static void align(MultiSeries& a, MultiSeries& b);
};

} // namespace qchar
