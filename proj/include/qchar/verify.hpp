#pragma once

// Identity corpus and verification: every established q-series identity in
// the library, each evaluable on both sides to an exact truncated series,
// plus negative-control perturbation, Sturm-style bounds, and numeric
// evaluation for modular-transformation spot checks.

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qchar/qseries.hpp"

namespace qchar {

// One verifiable identity.  Both sides evaluate to a Laurent series in q
// (optionally with z-variables), exact strictly below `order`.
struct IdentityCase {
    std::string id;
    std::string tags;  // space-separated filter tags
    Rat order;
    std::function<MultiSeries(const Rat&)> lhs, rhs;
    std::string note;  // extra context carried into the report
};

struct IdentityReport {
    std::string id;
    bool pass = false;
    std::optional<Rat> mismatch_at;  // first differing q-exponent
    std::string detail;              // both sides' coefficients at the mismatch
    // Negative control: lowest LHS coefficient bumped by +1 must be caught.
    bool control_caught = false;
    std::optional<Rat> control_at;
    std::string note;
    double seconds = 0;
};

// Exact comparison strictly below c.order.  With negative_control set, the
// evaluated left side is additionally perturbed by +q^{ord} and re-compared;
// the report records whether and where the defect was located.
IdentityReport check_identity(const IdentityCase& c, bool negative_control = false);

// The built-in corpus.  Constructed once; evaluation is lazy per case.
const std::vector<IdentityCase>& builtin_corpus();

// Run the corpus cases whose id or tag list matches `filter` (empty: all).
// `workers` caps how many cases evaluate in parallel; string-function work
// is internally serialized.  Reports come back in corpus order.
std::vector<IdentityReport> run_corpus(const std::string& filter = "",
                                       bool negative_controls = false,
                                       int workers = 1);

// ceil(weight/12 * [SL2(Z) : Gamma0(level)]), the coefficient count after
// which two holomorphic forms of that weight and level must coincide.
long long sturm_bound(const Rat& weight, long long level);

// sum_e coeff(e) * exp(2*pi*i*tau*e) in double precision.
std::complex<double> numeric_eval(const QSeries& s, std::complex<double> tau);

struct NumericCheck {
    std::string id;
    double rel_err = 0;
    bool pass = false;
};

// Numeric modular checks at a point tau on the upper half plane:
// eta(-1/tau) = sqrt(-i tau) eta(tau), and the S-transformation of the
// level-2 A3 coset characters (difference and sum rows), all sides
// evaluated from eta-quotient expansions truncated at T.
std::vector<NumericCheck> modular_numeric_checks(std::complex<double> tau,
                                                 const Rat& T, double tol);

}  // namespace qchar
