#include <catch2/catch_amalgamated.hpp>

#include "qchar/qseries.hpp"

using namespace qchar;

TEST_CASE("monomial arithmetic and exact polynomials") {
    QSeries a = QSeries::monomial(3, Rat(1, 2));     // 3 q^{1/2}
    QSeries b = QSeries::monomial(Rat(-1, 3), 2);    // -1/3 q^2
    QSeries p = a * b;
    REQUIRE(p.is_exact());
    REQUIRE(p.coeff(Rat(5, 2)) == -1);
    REQUIRE(p.coeff(Rat(1, 2)) == 0);

    QSeries s = a + a;
    REQUIRE(s.coeff(Rat(1, 2)) == 6);
    REQUIRE((a - a).is_zero());
}

TEST_CASE("truncation bookkeeping: add and mul") {
    // (1 + q) exact below 5, times q^2 exact: cut must become 7? No:
    // cut(mul) = min(5 + 2, inf + ...) = 7.
    QSeries f = (QSeries::one() + QSeries::monomial(1, 1)).truncated(5);
    QSeries g = QSeries::monomial(1, 2);
    QSeries h = f * g;
    REQUIRE(!h.is_exact());
    REQUIRE(h.cut() == 7);
    REQUIRE(h.coeff(3) == 1);

    // adding a series truncated lower shrinks the cut
    QSeries k = h + QSeries::zero(4);
    REQUIRE(k.cut() == 4);
    REQUIRE_THROWS(k.coeff(4));
}

TEST_CASE("geometric series inverse") {
    // (1 - q)^{-1} = 1 + q + q^2 + ...
    QSeries f = (QSeries::one() - QSeries::monomial(1, 1)).truncated(10);
    QSeries g = f.inverse();
    REQUIRE(g.cut() == 10);
    for (int i = 0; i < 10; ++i) REQUIRE(g.coeff(i) == 1);
    // f * f^{-1} = 1 on the shared range
    REQUIRE((f * g).agrees_with(QSeries::one(), 10));
}

TEST_CASE("inverse with fractional leading exponent") {
    // a = 2 q^{1/3} (1 + q); 1/a = (1/2) q^{-1/3} (1 - q + q^2 - ...)
    QSeries a = (QSeries::monomial(2, Rat(1, 3)) *
                 (QSeries::one() + QSeries::monomial(1, 1))).truncated(6);
    QSeries inv = a.inverse();
    // cut = 6 - 2/3
    REQUIRE(inv.cut() == Rat(16, 3));
    REQUIRE(inv.coeff(Rat(-1, 3)) == Rat(1, 2));
    REQUIRE(inv.coeff(Rat(2, 3)) == Rat(-1, 2));
    REQUIRE(inv.coeff(Rat(5, 3)) == Rat(1, 2));
    REQUIRE((a * inv).agrees_with(QSeries::one(), 5));
}

TEST_CASE("pow and scale_exponents") {
    QSeries f = (QSeries::one() + QSeries::monomial(1, 1)).truncated(8);
    QSeries f3 = f.pow(3);
    REQUIRE(f3.coeff(1) == 3);
    REQUIRE(f3.coeff(2) == 3);
    REQUIRE(f3.coeff(3) == 1);
    QSeries g = f.scale_exponents(Rat(1, 2)); // q -> q^{1/2}
    REQUIRE(g.cut() == 4);
    REQUIRE(g.coeff(Rat(1, 2)) == 1);
    QSeries h = f.pow(-2);
    // 1/(1+q)^2 = 1 - 2q + 3q^2 - 4q^3 ...
    REQUIRE(h.coeff(0) == 1);
    REQUIRE(h.coeff(1) == -2);
    REQUIRE(h.coeff(2) == 3);
    REQUIRE(h.coeff(3) == -4);
}

TEST_CASE("first_mismatch locates the offending exponent") {
    QSeries a = (QSeries::one() + QSeries::monomial(2, Rat(3, 2))).truncated(9);
    QSeries b = (QSeries::one() + QSeries::monomial(2, Rat(3, 2)) +
                 QSeries::monomial(1, 7)).truncated(9);
    auto mm = a.first_mismatch(b, 9);
    REQUIRE(mm.has_value());
    REQUIRE(*mm == 7);
    REQUIRE(a.agrees_with(b, 7));
}

TEST_CASE("multiseries: Laurent z-exponents and extraction") {
    // f = z1 q^{1/2} + z1^{-1} q^{1/2} + q
    MultiSeries f = MultiSeries::monomial(1, 1, Rat(1, 2), {Rat(1)}) +
                    MultiSeries::monomial(1, 1, Rat(1, 2), {Rat(-1)}) +
                    MultiSeries::monomial(1, 1, 1, {Rat(0)});
    MultiSeries f2 = f * f;
    // z-degree 0 of f^2: 2 q + q^2
    QSeries d0 = f2.coeff_z({Rat(0)});
    REQUIRE(d0.coeff(1) == 2);
    REQUIRE(d0.coeff(2) == 1);
    // z^2 coefficient: q
    REQUIRE(f2.coeff_z({Rat(2)}).coeff(1) == 1);
    // z = 1 evaluation: (2 q^{1/2} + q)^2
    QSeries e = f2.eval_z_one();
    REQUIRE(e.coeff(1) == 4);
    REQUIRE(e.coeff(Rat(3, 2)) == 4);
    REQUIRE(e.coeff(2) == 1);
}

TEST_CASE("multiseries truncation mirrors qseries semantics") {
    MultiSeries f = (MultiSeries::one(2) +
                     MultiSeries::monomial(2, 1, 1, {Rat(1), Rat(-1)})).truncated(4);
    MultiSeries g = f * f;
    REQUIRE(g.cut() == 4);
    auto terms = g.coeff_q(2);
    REQUIRE(terms.size() == 1);
    REQUIRE(terms[0].first[0] == 2);
    REQUIRE(terms[0].first[1] == -2);
    REQUIRE(terms[0].second == 1);
    // half-integer z-exponents round-trip
    MultiSeries h = MultiSeries::monomial(2, 3, Rat(1, 3), {Rat(1, 2), Rat(-3, 2)});
    REQUIRE(h.coeff_z({Rat(1, 2), Rat(-3, 2)}).coeff(Rat(1, 3)) == 3);
}
