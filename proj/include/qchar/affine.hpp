#pragma once

#include "qchar/blocks.hpp"
#include "qchar/qseries.hpp"

#include <map>
#include <string>
#include <vector>

namespace qchar {

using Labels = std::vector<long long>; // weight in the fundamental-weight basis
using RootCoords = std::vector<long long>; // element of the root lattice

// Finite root system of type A_n with the standard symmetric Cartan matrix.
struct RootSystemA {
    explicit RootSystemA(int rank);

    int n;
    std::vector<std::vector<long long>> cartan;     // C
    std::vector<std::vector<Rat>> cartan_inv;       // C^{-1}
    std::vector<RootCoords> pos_roots;              // alpha_{i..j} as root coords

    long long dual_coxeter() const { return n + 1; }
    long long dim() const { return n * n + 2 * n; }
    Labels rho() const { return Labels(n, 1); }
    Labels theta_labels() const;        // highest root in the weight basis
    RootCoords theta_coords() const { return RootCoords(n, 1); }

    // (lambda, mu) for weights in the weight basis: lambda^T C^{-1} mu.
    Rat ip_weight(const Labels& a, const Labels& b) const;
    Rat norm2(const Labels& a) const { return ip_weight(a, a); }
    // (lambda, alpha) for a weight and a root-lattice element: sum c_j lambda_j.
    long long ip_weight_root(const Labels& lam, const RootCoords& c) const;
    // (alpha, beta) for two root-lattice elements: a^T C b.
    long long ip_root(const RootCoords& a, const RootCoords& b) const;

    Labels root_to_weight(const RootCoords& c) const;         // C c
    std::vector<Rat> weight_to_root(const Labels& lam) const; // C^{-1} lam
    // True iff lam lies in the root lattice.
    bool in_root_lattice(const Labels& lam) const;

    // Reflect lam into the dominant chamber (finite Weyl group); if sign is
    // given it receives the determinant of the applied element.
    Labels dominantize(Labels lam, int* sign = nullptr) const;

    // Unique representative of lam under the level-k affine Weyl group
    // (finite reflections + translations by k * root lattice): dominant
    // with (lam, theta) <= k.
    Labels alcove_representative(Labels lam, long long k) const;

    // All dominant lam with (lam, theta) <= k (level-k alcove weights).
    std::vector<Labels> alcove_weights(long long k) const;
};

// Weight multiplicities M(nu, d) of the level-k highest weight module with
// finite highest weight Lambda: the multiplicity of the affine weight whose
// finite part is nu at depth d in the imaginary direction, computed by the
// affine Freudenthal recursion.  Tables are filled grade by grade and can be
// persisted under QCHAR_CACHE_DIR.
class StringEngine {
public:
    StringEngine(int rank, long long level);

    const RootSystemA& roots() const { return rs_; }
    long long level() const { return k_; }

    // Ensure the multiplicity table of L(Lambda) is complete to grade dmax.
    void ensure(const Labels& Lambda, long long dmax);
    long long mult(const Labels& Lambda, const Labels& nu, long long d);

    // Modular anomaly s_Lambda = |Lambda+rho|^2 / (2(k+h)) - dim(g)/24.
    Rat anomaly(const Labels& Lambda) const;

    // String function c^Lambda_lambda as a q-series exact below T.
    QSeries string_function(const Labels& Lambda, const Labels& lambda, const Rat& T);
    // Coset (parafermion) character b^Lambda_lambda = eta^n * c^Lambda_lambda.
    QSeries coset_character(const Labels& Lambda, const Labels& lambda, const Rat& T);

    // Full normalized character as weight multiplicities assembled from the
    // Freudenthal table: map (nu labels, d) -> M for d <= dmax.
    std::map<std::pair<Labels, long long>, long long>
    character_table(const Labels& Lambda, long long dmax);

private:
    RootSystemA rs_;
    long long k_;
    struct Table {
        long long dmax = -1;
        std::map<std::pair<Labels, long long>, long long> m;
    };
    std::map<Labels, Table> tables_;

    long long lookup(const Table& t, const Labels& Lambda, Labels nu, long long d) const;
    std::string cache_path(const Labels& Lambda) const;
    void load_cache(const Labels& Lambda, Table& t) const;
    void save_cache(const Labels& Lambda, const Table& t) const;
};

// All (det(w), w(lam)) pairs over the finite Weyl group of A_n (one entry
// per group element).
std::vector<std::pair<int, Labels>> weyl_group_images(const RootSystemA& rs,
                                                      const Labels& lam);

// Independent oracle: the same multiplicity table computed from the Weyl-Kac
// character formula (alternating theta-like numerator divided by the affine
// denominator, graded by the principal degree).
std::map<std::pair<Labels, long long>, long long>
weyl_kac_character_table(int rank, long long level, const Labels& Lambda, long long dmax);

// Check the theta-function decomposition of the full character of L(Lambda):
// sum_{nu,d} M(nu,d) z^{nu} q^d equals
// sum_{lam in alcove, lam = Lambda mod Q} q^{-|lam|^2/2k} S_lam(q) Theta_lam(z,q)
// with S_lam the string series and Theta_lam the level-k theta function.
// Returns the first mismatching q-grade, or nullopt on success.
std::optional<Rat> theta_decomposition_mismatch(StringEngine& eng, const Labels& Lambda,
                                                long long dmax);

} // namespace qchar
