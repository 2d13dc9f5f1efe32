#pragma once

// Single-channel fusion rings, pentagon/hexagon consistency for F/R symbols
// valued in 8th roots of unity, and the commutation constants of the coupled
// free-fermion algebras in Q(zeta_8).

#include <array>
#include <map>
#include <string>
#include <vector>

#include "qchar/rational.hpp"

namespace qchar {

// Element of Q(zeta_8): c[0] + c[1] z + c[2] z^2 + c[3] z^3 with z^4 = -1.
class Cyc8 {
  public:
    Cyc8() : c_{0, 0, 0, 0} {}
    Cyc8(const Rat& r) : c_{r, 0, 0, 0} {}
    static Cyc8 zeta(long long power);           // zeta_8^power
    static Cyc8 sqrt2() { return zeta(1) - zeta(3); }

    Cyc8 operator+(const Cyc8& o) const;
    Cyc8 operator-(const Cyc8& o) const;
    Cyc8 operator*(const Cyc8& o) const;
    Cyc8 operator/(const Cyc8& o) const { return *this * o.inverse(); }
    Cyc8 operator-() const;
    bool operator==(const Cyc8& o) const { return c_ == o.c_; }
    bool operator!=(const Cyc8& o) const { return c_ != o.c_; }

    Cyc8 galois(int k) const;   // zeta -> zeta^k for odd k
    Cyc8 inverse() const;       // via the product of Galois conjugates
    bool is_zero() const;
    const std::array<Rat, 4>& coords() const { return c_; }
    std::string str() const;

  private:
    std::array<Rat, 4> c_;
};

// Fusion ring with all fusion multiplicities <= 1 and a group-like product
// (every product has exactly one channel); element 0 is the identity.
struct FusionRing {
    std::vector<std::vector<int>> table;
    std::vector<Rat> h;  // conformal weights
    int size() const { return (int)table.size(); }
    int mul(int i, int j) const { return table[i][j]; }
};

// Untwisted sectors of the level-2 coset parafermion theories.
FusionRing sl3_coset_ring();  // {[0],[1],[2],[3]} = Z2 x Z2
FusionRing sl4_coset_ring();  // {[0],...,[6],[eta]} = Z2^3

// F/R symbols as exponents of zeta_8.  The scalar F symbol indexed by
// (i,j,k) is (F^l_{jki})_{pq} with p = i*j, q = j*k, l = i*j*k; the scalar
// R symbol indexed by (i,j) is R^{i*j}_{ij}.  Symbols involving the
// identity are gauge-fixed to 1 and not stored.
struct FRSolution {
    std::map<std::array<int, 3>, int> fexp;
    std::map<std::array<int, 2>, int> rexp;
    int f(int i, int j, int k) const;
    int r(int i, int j) const;
};

// All pentagon, hexagon, and monodromy (R^2) relations for the ring;
// returns a human-readable description of every violated relation.
std::vector<std::string> fr_residuals(const FusionRing& ring,
                                      const FRSolution& sol);

// Enumerates all solutions of the pentagon/hexagon/monodromy system over
// 8th roots of unity (unit propagation plus backtracking on exponents).
std::vector<FRSolution> solve_fr(const FusionRing& ring, size_t max_solutions = 1 << 20);

// The published solution for the sl3 coset: F(i,j,i) = -1 for i != j.
FRSolution sl3_known_solution();

// Commutation constants mu_ij, c_ij of the coupled free-fermion algebra for
// sl4, built from mu = x^2, c = x/sqrt(2) on the twelve coupled ordered
// pairs (x = zeta_8^{-1}), closed up with c_ij = mu_ij c_ji, mu_ij mu_ji = 1.
struct GcrConstants {
    std::map<std::array<int, 2>, Cyc8> mu;
    std::map<std::array<int, 2>, Cyc8> c;
};
GcrConstants sl4_gcr_constants(bool flip_mu54 = false);

// Consistency checks derived from associativity of the triple products
// psi5 psi4, psi1 psi3, psi6 psi2 acting on the vacuum; returns violations.
std::vector<std::string> gcr_residuals(const GcrConstants& g);

}  // namespace qchar
