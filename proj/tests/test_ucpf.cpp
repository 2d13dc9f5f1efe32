#include <catch2/catch_amalgamated.hpp>

#include "qchar/affine.hpp"
#include "qchar/blocks.hpp"
#include "qchar/ucpf.hpp"

using namespace qchar;

namespace {

const Rat H = Rat(1, 2);

Mat gram3() {
    return {{1, H, H}, {H, 1, H}, {H, H, 1}};
}

Mat gram4() {
    return {{1, H, 0, H, H, H}, {H, 1, H, H, H, 0}, {0, H, 1, H, H, H},
            {H, H, H, 1, 1, H}, {H, H, H, 1, 1, H}, {H, 0, H, H, H, 1}};
}

}  // namespace

TEST_CASE("rank-3 quasiparticle sums against level-2 sl3 coset characters") {
    const Rat T = 8;
    StringEngine eng(2, 2);
    std::vector<Rat> a0(3, 0);
    QSeries untw = ucpf_sum(gram3(), a0, false, T + 1).shifted(Rat(-1, 20));
    QSeries rhs = eng.coset_character({0, 0}, {0, 0}, T) +
                  eng.coset_character({0, 0}, {1, 1}, T).scaled(3);
    REQUIRE(untw.agrees_with(rhs, T));

    std::vector<Rat> a1{0, H, H};
    QSeries tw = ucpf_sum(gram3(), a1, false, T + 1).shifted(Rat(1, 20));
    QSeries rhs1 = eng.coset_character({1, 0}, {0, 2}, T) +
                   eng.coset_character({1, 0}, {1, 0}, T).scaled(3);
    REQUIRE(tw.agrees_with(rhs1, T));
}

TEST_CASE("Fock state counts reproduce the rank-3 quasiparticle sums") {
    const Rat T = 8;
    std::vector<Rat> a0(3, 0), a1{0, H, H};
    REQUIRE(fock_basis_count(FockFamily::Sl3Untwisted, T)
                .agrees_with(ucpf_sum(gram3(), a0, false, T), T));
    REQUIRE(fock_basis_count(FockFamily::Sl3Twisted, T)
                .agrees_with(ucpf_sum(gram3(), a1, false, T), T));
}

TEST_CASE("rank-6 quasiparticle sums against level-2 sl4 coset characters") {
    const Rat T = 8;
    // eta-quotient forms of the level-2 sl4 coset characters
    QSeries bsum = eta_quotient({{4, 4}, {6, 8}, {1, -1}, {2, -4}, {3, -3}, {12, -4}}, T) +
                   eta_quotient({{2, 8}, {3, 1}, {12, 4}, {1, -5}, {4, -4}, {6, -4}}, T);
    QSeries b0101_up = eta_quotient({{2, 2}, {6, 2}, {1, -3}, {3, -1}}, T);
    QSeries lhs = ucpf_sum(gram4(), std::vector<Rat>(6, 0), false, T + 1)
                      .shifted(Rat(-1, 12));
    REQUIRE(lhs.agrees_with(bsum + b0101_up.scaled(6), T));

    std::vector<Rat> a1{0, H, 0, H, H, H};
    QSeries lhs1 = ucpf_sum(gram4(), a1, false, T + 1).shifted(Rat(1, 6) - Rat(1, 12));
    QSeries b2000_dn = eta_quotient({{6, 3}, {1, -2}, {2, -1}}, T).scaled(3);
    QSeries b0101_dn = eta_quotient({{2, 3}, {3, 2}, {1, -4}, {6, -1}}, T);
    REQUIRE(lhs1.agrees_with(b2000_dn.scaled(2) + b0101_dn.scaled(6), T));

    std::vector<Rat> a2{H, H, 0, 0, H, 0};
    QSeries lhs2 = ucpf_sum(gram4(), a2, false, T + 1).shifted(Rat(1, 8) - Rat(1, 12));
    QSeries b1100 = eta_quotient({{4, 5}, {1, -3}, {8, -2}}, T);
    QSeries b0011 = eta_quotient({{2, 2}, {8, 2}, {1, -3}, {4, -1}}, T).scaled(2);
    REQUIRE(lhs2.agrees_with((b1100 + b0011).scaled(4), T));
}

TEST_CASE("Fock state counts reproduce the rank-6 quasiparticle sums") {
    const Rat T = 6;
    std::vector<Rat> a0(6, 0), a1{0, H, 0, H, H, H}, a2{H, H, 0, 0, H, 0};
    REQUIRE(fock_basis_count(FockFamily::Sl4Untwisted, T)
                .agrees_with(ucpf_sum(gram4(), a0, false, T), T));
    REQUIRE(fock_basis_count(FockFamily::Sl4Sixth, T)
                .agrees_with(ucpf_sum(gram4(), a1, false, T), T));
    REQUIRE(fock_basis_count(FockFamily::Sl4Eighth, T)
                .agrees_with(ucpf_sum(gram4(), a2, false, T), T));
}

TEST_CASE("multivariate quasiparticle sum: rank-1 specialization") {
    // sum_N z^N q^{N^2/2} / (q)_N at z = 1 equals the alternating-free sum
    const Rat T = 10;
    Mat g{{Rat(1)}};
    std::vector<std::vector<Rat>> zw{{Rat(1)}};
    MultiSeries ms = ucpf_sum_z(g, {Rat(0)}, zw, false, T);
    REQUIRE(ms.eval_z_one().agrees_with(ucpf_sum(g, {Rat(0)}, false, T), T));
    // coefficient of z^1 is q^{1/2}/(1-q)
    QSeries z1 = ms.coeff_z({Rat(1)});
    QSeries geo = (QSeries::one() - QSeries::monomial(1, 1))
                      .truncated(T).inverse().shifted(H);
    REQUIRE(z1.agrees_with(geo, T));
}

TEST_CASE("dilogarithm central charges") {
    std::vector<std::vector<double>> g3{{1, .5, .5}, {.5, 1, .5}, {.5, .5, 1}};
    REQUIRE(std::abs(dilog_central_charge(g3) - 1.2) < 1e-9);
    std::vector<std::vector<double>> g4{
        {1, .5, 0, .5, .5, .5}, {.5, 1, .5, .5, .5, 0}, {0, .5, 1, .5, .5, .5},
        {.5, .5, .5, 1, 1, .5}, {.5, .5, .5, 1, 1, .5}, {.5, 0, .5, .5, .5, 1}};
    REQUIRE(std::abs(dilog_central_charge(g4) - 2.0) < 1e-9);
    REQUIRE(std::abs(dilog_central_charge({{1.0}}) - 0.5) < 1e-9);
}
