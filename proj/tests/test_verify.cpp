#include <catch2/catch_amalgamated.hpp>

#include "qchar/blocks.hpp"
#include "qchar/verify.hpp"

using namespace qchar;

TEST_CASE("corpus spot checks pass and controls are caught") {
    for (const char* id :
         {"jacobi-triple", "a1-lattice-vacuum", "hirschhorn-x5",
          "ucpf-sl3-untwisted", "dec-sl3-b200-200", "thm-voa-z-11",
          "lemma-q-gauss"}) {
        auto reports = run_corpus(id, true);
        REQUIRE(reports.size() == 1);
        INFO(id << ": " << reports[0].detail);
        CHECK(reports[0].pass);
        CHECK(reports[0].control_caught);
    }
}

TEST_CASE("tag filters select whole groups") {
    auto reports = run_corpus("fock", false);
    CHECK(reports.size() == 5);
    for (auto& r : reports) CHECK(r.pass);
}

TEST_CASE("mismatch location is exact") {
    IdentityCase c;
    c.id = "deliberate";
    c.order = 10;
    c.lhs = [](const Rat& T) {
        return MultiSeries::lift(0, euler_phi(T));
    };
    c.rhs = [](const Rat& T) {
        return MultiSeries::lift(
            0, euler_phi(T) + QSeries::monomial(Rat(1, 3), 7));
    };
    auto r = check_identity(c, false);
    CHECK_FALSE(r.pass);
    REQUIRE(r.mismatch_at.has_value());
    CHECK(*r.mismatch_at == 7);
    // q^7 is a generalized pentagonal number, so the base coefficient is 1
    // and the perturbed side shows 1 + 1/3.
    CHECK(r.detail.find("4/3") != std::string::npos);
}

TEST_CASE("sturm bounds") {
    // index of the congruence subgroup: level * prod (1 + 1/p)
    CHECK(sturm_bound(6, 24) == 24);   // index 48, weight 6
    CHECK(sturm_bound(12, 1) == 1);    // SL2(Z), weight 12
    CHECK(sturm_bound(2, 11) == 2);    // index 12, weight 2
}

TEST_CASE("numeric evaluation matches the known value of eta at i") {
    auto v = numeric_eval(eta(1, 60), std::complex<double>(0, 1));
    // Gamma(1/4) / (2 pi^{3/4})
    CHECK(std::abs(v - std::complex<double>(0.7682254223260567, 0)) < 1e-12);
}

TEST_CASE("modular transformation checks hold numerically") {
    for (auto tau : {std::complex<double>(0, 0.9),
                     std::complex<double>(0, 1.3)}) {
        auto checks = modular_numeric_checks(tau, 60, 1e-6);
        REQUIRE(checks.size() == 3);
        for (auto& c : checks) {
            INFO(c.id << " rel_err=" << c.rel_err);
            CHECK(c.pass);
        }
    }
}
