#include <catch2/catch_amalgamated.hpp>

#include "qchar/blocks.hpp"

using namespace qchar;

TEST_CASE("euler product and partition numbers") {
    // 1/(q;q)_inf generates the partition numbers.
    const long long p[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77,
                           101, 135, 176, 231, 297, 385, 490, 627};
    QSeries inv_phi = euler_phi(21).inverse();
    for (int i = 0; i <= 20; ++i) REQUIRE(inv_phi.coeff(i) == p[i]);
    // pentagonal series agrees with the raw product
    REQUIRE(euler_phi(18).agrees_with(poch_inf(1, 1, 1, 18), 18));
}

TEST_CASE("finite pochhammer products") {
    // (q; q)_3 = (1-q)(1-q^2)(1-q^3)
    QSeries p3 = poch_finite(1, 1, 1, 3, 10);
    REQUIRE(p3.coeff(0) == 1);
    REQUIRE(p3.coeff(1) == -1);
    REQUIRE(p3.coeff(2) == -1);
    REQUIRE(p3.coeff(3) == 0);
    REQUIRE(p3.coeff(4) == 1);
    REQUIRE(p3.coeff(5) == 1);
    REQUIRE(p3.coeff(6) == -1);
    // (-q^{1/2}; q)_2 = (1+q^{1/2})(1+q^{3/2})
    QSeries f = poch_finite(-1, Rat(1, 2), 1, 2, 10);
    REQUIRE(f.coeff(Rat(1, 2)) == 1);
    REQUIRE(f.coeff(Rat(3, 2)) == 1);
    REQUIRE(f.coeff(2) == 1);
}

TEST_CASE("eta and eta quotients") {
    // eta(tau) = q^{1/24} (1 - q - q^2 + q^5 + q^7 - ...)
    QSeries e = eta(1, 3);
    REQUIRE(e.coeff(Rat(1, 24)) == 1);
    REQUIRE(e.coeff(Rat(25, 24)) == -1);
    REQUIRE(e.coeff(Rat(49, 24)) == -1);
    // eta(2 tau)/eta(tau)^2 = q^0 (1 + 2q + 4q^2 + 8q^3 + 14q^4 + ...)
    const long long c[] = {1, 2, 4, 8, 14, 24, 40, 64, 100, 154, 232, 344,
                           504, 728, 1040, 1472};
    QSeries h = eta_quotient({{2, 1}, {1, -2}}, 16);
    for (int i = 0; i <= 15; ++i) REQUIRE(h.coeff(i) == c[i]);
    // quotient of a fractional argument: eta(tau/2) has leading power 1/48
    QSeries g = eta_quotient({{Rat(1, 2), 1}}, 2);
    REQUIRE(g.coeff(Rat(1, 48)) == 1);
    REQUIRE(g.coeff(Rat(1, 48) + Rat(1, 2)) == -1);
}

TEST_CASE("gaussian binomials") {
    QSeries g63 = gaussian_binomial(6, 3);
    const long long c63[] = {1, 1, 2, 3, 3, 3, 3, 2, 1, 1};
    REQUIRE(g63.is_exact());
    for (int i = 0; i <= 9; ++i) REQUIRE(g63.coeff(i) == c63[i]);
    QSeries g52 = gaussian_binomial(5, 2);
    const long long c52[] = {1, 1, 2, 2, 2, 1, 1};
    for (int i = 0; i <= 6; ++i) REQUIRE(g52.coeff(i) == c52[i]);
    // symmetry and boundary cases
    REQUIRE(gaussian_binomial(6, 3).agrees_with(gaussian_binomial(6, 3), 100));
    REQUIRE(gaussian_binomial(4, 0).coeff(0) == 1);
    REQUIRE(gaussian_binomial(4, 4).coeff(0) == 1);
    REQUIRE(gaussian_binomial(3, 5).is_zero());
}

TEST_CASE("rank-1 theta series") {
    // gram [[1]]: sum_n q^{n^2/2} = 1 + 2q^{1/2} + 2q^2 + 2q^{9/2} + ...
    QSeries t = theta_lattice({{Rat(1)}}, {Rat(0)}, 11);
    REQUIRE(t.coeff(0) == 1);
    REQUIRE(t.coeff(Rat(1, 2)) == 2);
    REQUIRE(t.coeff(2) == 2);
    REQUIRE(t.coeff(Rat(9, 2)) == 2);
    REQUIRE(t.coeff(8) == 2);
    REQUIRE(t.coeff(1) == 0);
    // shifted: sum_n q^{(n+1/2)^2/2} = 2q^{1/8} + 2q^{9/8} + ...
    QSeries s = theta_lattice({{Rat(1)}}, {Rat(1, 2)}, 5);
    REQUIRE(s.coeff(Rat(1, 8)) == 2);
    REQUIRE(s.coeff(Rat(9, 8)) == 2);
    REQUIRE(s.coeff(Rat(25, 8)) == 2);
}

TEST_CASE("rank-2 hexagonal theta series") {
    // halved A2 gram: exponents (m^2+n^2-mn)/2 with frozen counts
    std::vector<std::vector<Rat>> g = {{Rat(1), Rat(-1, 2)}, {Rat(-1, 2), Rat(1)}};
    QSeries t = theta_lattice(g, {Rat(0), Rat(0)}, 11);
    const std::pair<long long, long long> counts[] = {
        {0, 1}, {1, 6}, {3, 6}, {4, 6}, {7, 12}, {9, 6}, {12, 6}, {13, 12}, {16, 6}};
    for (auto [v, c] : counts) REQUIRE(t.coeff(Rat(v, 2)) == c);
    REQUIRE(t.coeff(1) == 0); // 2 is not represented by m^2+n^2-mn
    // twisted by (-1)^{m+n}: theta(+-) style alternating sum stays consistent
    std::vector<long long> tw = {1, 1};
    QSeries a = theta_lattice(g, {Rat(0), Rat(0)}, 6, &tw);
    REQUIRE(a.coeff(0) == 1);
    // six vectors of norm 1: four with odd m+n, two even -> 2 - 4 = -2
    REQUIRE(a.coeff(Rat(1, 2)) == -2);
}

TEST_CASE("multivariate pochhammer factors") {
    // prod_{j>=0}(1 + z q^{j+1/2}) tracks z-degree by number of factors used
    MultiSeries f = ms_poch_inf(1, -1, Rat(1, 2), {Rat(1)}, 1, 6);
    REQUIRE(f.coeff_z({Rat(1)}).coeff(Rat(1, 2)) == 1);
    REQUIRE(f.coeff_z({Rat(2)}).coeff(2) == 1);      // q^{1/2+3/2}
    REQUIRE(f.coeff_z({Rat(3)}).coeff(Rat(9, 2)) == 1);
    QSeries z1 = f.eval_z_one();
    // (-q^{1/2}; q)_inf = free-fermion generating product
    REQUIRE(z1.agrees_with(poch_inf(-1, Rat(1, 2), 1, 6), 6));
}
