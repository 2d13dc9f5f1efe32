#include <catch2/catch_amalgamated.hpp>

#include "qchar/fusion.hpp"

using namespace qchar;

TEST_CASE("cyclotomic arithmetic in Q(zeta_8)") {
    Cyc8 z = Cyc8::zeta(1);
    Cyc8 p = z;
    for (int i = 0; i < 3; ++i) p = p * z;
    REQUIRE(p == Cyc8(Rat(-1)));  // zeta^4 = -1
    for (int i = 0; i < 4; ++i) p = p * z;
    REQUIRE(p == Cyc8(1));  // zeta^8 = 1
    REQUIRE(Cyc8::sqrt2() * Cyc8::sqrt2() == Cyc8(2));
    Cyc8 a = Cyc8(Rat(3, 5)) + Cyc8(Rat(2)) * Cyc8::zeta(3);
    REQUIRE(a * a.inverse() == Cyc8(1));
    REQUIRE(a.galois(3).galois(3) == a.galois(9 % 8));
}

TEST_CASE("coset fusion rings are abelian 2-groups") {
    for (const FusionRing& g : {sl3_coset_ring(), sl4_coset_ring()}) {
        int n = g.size();
        for (int i = 0; i < n; ++i) {
            REQUIRE(g.mul(0, i) == i);
            REQUIRE(g.mul(i, i) == 0);  // every sector is self-dual
            for (int j = 0; j < n; ++j) {
                REQUIRE(g.mul(i, j) == g.mul(j, i));
                for (int k = 0; k < n; ++k)
                    REQUIRE(g.mul(g.mul(i, j), k) == g.mul(i, g.mul(j, k)));
            }
        }
    }
    REQUIRE(sl4_coset_ring().h[7] == 1);
}

TEST_CASE("published sl3 F/R data satisfies pentagon, hexagon, monodromy") {
    FusionRing ring = sl3_coset_ring();
    FRSolution sol = sl3_known_solution();
    REQUIRE(sol.f(1, 2, 1) == 4);  // the F value -1
    REQUIRE((2 * sol.r(2, 3)) % 8 == 4);  // (R^1_{23})^2 = -1
    REQUIRE(fr_residuals(ring, sol).empty());
}

TEST_CASE("negative control: a flipped F symbol is caught and located") {
    FusionRing ring = sl3_coset_ring();
    FRSolution sol = sl3_known_solution();
    sol.fexp[{1, 2, 1}] = 0;  // -1 -> +1
    std::vector<std::string> bad = fr_residuals(ring, sol);
    REQUIRE(!bad.empty());
    bool located = false;
    for (const std::string& b : bad)
        if (b.find("pentagon") != std::string::npos ||
            b.find("hexagon") != std::string::npos)
            located = true;
    REQUIRE(located);
}

TEST_CASE("exhaustive solve over 8th roots recovers the published solution") {
    FusionRing ring = sl3_coset_ring();
    std::vector<FRSolution> sols = solve_fr(ring);
    REQUIRE(sols.size() == 64);  // frozen: residual R-phase freedom only
    FRSolution known = sl3_known_solution();
    bool found = false;
    for (const FRSolution& s : sols) {
        // every solution has all six F symbols equal to -1
        for (const auto& [key, v] : s.fexp) REQUIRE(v == 4);
        if (s.fexp == known.fexp && s.rexp == known.rexp) found = true;
    }
    REQUIRE(found);
}

TEST_CASE("commutation constants of the rank-3 fermion algebra") {
    REQUIRE(gcr_residuals(sl4_gcr_constants()).empty());
    std::vector<std::string> bad = gcr_residuals(sl4_gcr_constants(true));
    REQUIRE(bad.size() == 2);  // both mu54 determinations fail
    REQUIRE(bad[0].find("mu54") != std::string::npos);
}
