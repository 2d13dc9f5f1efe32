#include "qchar/fusion.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qchar {

// ---------------------------------------------------------------------------
// Cyc8

Cyc8 Cyc8::zeta(long long power) {
    long long p = ((power % 8) + 8) % 8;
    Cyc8 z;
    if (p < 4)
        z.c_[p] = 1;
    else
        z.c_[p - 4] = -1;
    return z;
}

Cyc8 Cyc8::operator+(const Cyc8& o) const {
    Cyc8 r;
    for (int i = 0; i < 4; ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
}

Cyc8 Cyc8::operator-(const Cyc8& o) const {
    Cyc8 r;
    for (int i = 0; i < 4; ++i) r.c_[i] = c_[i] - o.c_[i];
    return r;
}

Cyc8 Cyc8::operator-() const {
    Cyc8 r;
    for (int i = 0; i < 4; ++i) r.c_[i] = -c_[i];
    return r;
}

Cyc8 Cyc8::operator*(const Cyc8& o) const {
    Cyc8 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Rat v = c_[i] * o.c_[j];
            if (v == 0) continue;
            int k = i + j;
            if (k >= 4)
                r.c_[k - 4] -= v;
            else
                r.c_[k] += v;
        }
    return r;
}

Cyc8 Cyc8::galois(int k) const {
    if (k % 2 == 0) throw std::invalid_argument("Cyc8::galois: k must be odd");
    Cyc8 r;
    for (int i = 0; i < 4; ++i) {
        if (c_[i] == 0) continue;
        r = r + Cyc8(c_[i]) * zeta((long long)i * k);
    }
    return r;
}

Cyc8 Cyc8::inverse() const {
    // x * s3(x) s5(x) s7(x) is the rational norm of x
    Cyc8 conj = galois(3) * galois(5) * galois(7);
    Cyc8 norm = *this * conj;
    for (int i = 1; i < 4; ++i)
        if (norm.c_[i] != 0) throw std::logic_error("Cyc8: norm not rational");
    if (norm.c_[0] == 0) throw std::domain_error("Cyc8: inverse of zero");
    Cyc8 r;
    for (int i = 0; i < 4; ++i) r.c_[i] = conj.c_[i] / norm.c_[0];
    return r;
}

bool Cyc8::is_zero() const {
    return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0;
}

std::string Cyc8::str() const {
    std::ostringstream os;
    os << "(" << c_[0] << ", " << c_[1] << ", " << c_[2] << ", " << c_[3]
       << ")";
    return os.str();
}

// ---------------------------------------------------------------------------
// Fusion rings

FusionRing sl3_coset_ring() {
    FusionRing ring;
    ring.table.assign(4, std::vector<int>(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) ring.table[i][j] = i ^ j;
    ring.h = {0, Rat(1, 2), Rat(1, 2), Rat(1, 2)};
    return ring;
}

FusionRing sl4_coset_ring() {
    // labels 0..6 and eta = 7
    FusionRing ring;
    ring.table = {
        {0, 1, 2, 3, 4, 5, 6, 7},
        {1, 0, 4, 7, 2, 6, 5, 3},
        {2, 4, 0, 5, 1, 3, 7, 6},
        {3, 7, 5, 0, 6, 2, 4, 1},
        {4, 2, 1, 6, 0, 7, 3, 5},
        {5, 6, 3, 2, 7, 0, 1, 4},
        {6, 5, 7, 4, 3, 1, 0, 2},
        {7, 3, 6, 1, 5, 4, 2, 0},
    };
    ring.h = {0,          Rat(1, 2), Rat(1, 2), Rat(1, 2),
              Rat(1, 2), Rat(1, 2), Rat(1, 2), 1};
    return ring;
}

// ---------------------------------------------------------------------------
// Relations

int FRSolution::f(int i, int j, int k) const {
    auto it = fexp.find({i, j, k});
    return it == fexp.end() ? 0 : it->second;
}

int FRSolution::r(int i, int j) const {
    auto it = rexp.find({i, j});
    return it == rexp.end() ? 0 : it->second;
}

namespace {

struct Term {
    bool is_f;
    std::array<int, 3> key;  // R terms use key[0], key[1]
    int coeff;
};

struct Relation {
    std::vector<Term> terms;
    int rhs;  // target exponent mod 8
    std::string name;
};

bool f_gauge(const FusionRing& g, int i, int j, int k) {
    return i == 0 || j == 0 || k == 0 || g.mul(i, j) == 0 || g.mul(j, k) == 0 ||
           g.mul(g.mul(i, j), k) == 0;
}

void push_f(const FusionRing& g, std::vector<Term>& out, int i, int j, int k,
            int coeff) {
    if (!f_gauge(g, i, j, k)) out.push_back({true, {i, j, k}, coeff});
}

void push_r(std::vector<Term>& out, int i, int j, int coeff) {
    if (i != 0 && j != 0) out.push_back({false, {i, j, 0}, coeff});
}

std::vector<Relation> build_relations(const FusionRing& g) {
    std::vector<Relation> rels;
    int n = g.size();
    // monodromy: (R^{ij}_{ij})^2 = e^{2 pi i (h_{ij} - h_i - h_j)}
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j) {
            Rat e = 8 * (g.h[g.mul(i, j)] - g.h[i] - g.h[j]);
            Relation rel;
            rel.rhs = (int)(((rat_to_int(e) % 8) + 8) % 8);
            push_r(rel.terms, i, j, 2);
            std::ostringstream os;
            os << "monodromy R(" << i << "," << j << ")";
            rel.name = os.str();
            rels.push_back(std::move(rel));
        }
    // pentagon, free indices (p,q,r,s)
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            for (int r = 0; r < n; ++r)
                for (int s = 0; s < n; ++s) {
                    int c = g.mul(r, s), a = g.mul(p, q), e = g.mul(q, r);
                    Relation rel;
                    rel.rhs = 0;
                    push_f(g, rel.terms, p, q, c, 1);
                    push_f(g, rel.terms, a, r, s, 1);
                    push_f(g, rel.terms, q, r, s, -1);
                    push_f(g, rel.terms, p, e, s, -1);
                    push_f(g, rel.terms, p, q, r, -1);
                    if (rel.terms.empty()) continue;
                    std::ostringstream os;
                    os << "pentagon(" << p << "," << q << "," << r << "," << s
                       << ")";
                    rel.name = os.str();
                    rels.push_back(std::move(rel));
                }
    // hexagon, free indices (p,q,r)
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            for (int r = 0; r < n; ++r) {
                Relation rel;
                rel.rhs = 0;
                push_r(rel.terms, p, r, 1);
                push_f(g, rel.terms, q, p, r, 1);
                push_r(rel.terms, p, q, 1);
                push_f(g, rel.terms, q, r, p, -1);
                push_r(rel.terms, p, g.mul(q, r), -1);
                push_f(g, rel.terms, p, q, r, -1);
                if (rel.terms.empty()) continue;
                std::ostringstream os;
                os << "hexagon(" << p << "," << q << "," << r << ")";
                rel.name = os.str();
                rels.push_back(std::move(rel));
            }
    return rels;
}

}  // namespace

std::vector<std::string> fr_residuals(const FusionRing& ring,
                                      const FRSolution& sol) {
    std::vector<std::string> bad;
    for (const Relation& rel : build_relations(ring)) {
        int sum = 0;
        for (const Term& t : rel.terms) {
            int v = t.is_f ? sol.f(t.key[0], t.key[1], t.key[2])
                           : sol.r(t.key[0], t.key[1]);
            sum += t.coeff * v;
        }
        if (((sum % 8) + 8) % 8 != rel.rhs) bad.push_back(rel.name);
    }
    return bad;
}

std::vector<FRSolution> solve_fr(const FusionRing& ring, size_t max_solutions) {
    int n = ring.size();
    // variable registry
    std::map<std::array<int, 3>, int> fvar;
    std::map<std::array<int, 2>, int> rvar;
    int nv = 0;
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j) {
            for (int k = 1; k < n; ++k)
                if (!f_gauge(ring, i, j, k)) fvar[{i, j, k}] = nv++;
            rvar[{i, j}] = nv++;
        }

    // compile relations to (var, coeff) lists, merging repeated variables
    struct CEq {
        std::vector<std::pair<int, int>> terms;
        int rhs;
    };
    std::vector<CEq> eqs;
    for (const Relation& rel : build_relations(ring)) {
        std::map<int, int> acc;
        for (const Term& t : rel.terms) {
            int id = t.is_f ? fvar.at({t.key[0], t.key[1], t.key[2]})
                            : rvar.at({t.key[0], t.key[1]});
            acc[id] += t.coeff;
        }
        CEq eq;
        eq.rhs = rel.rhs;
        for (auto& [id, co] : acc)
            if (((co % 8) + 8) % 8 != 0) eq.terms.push_back({id, co});
        if (eq.terms.empty()) {
            if (eq.rhs != 0)
                throw std::logic_error("solve_fr: inconsistent gauge relation");
            continue;
        }
        eqs.push_back(std::move(eq));
    }

    std::vector<uint16_t> dom(nv, 0xFF);  // bit v set <=> value v possible
    std::vector<FRSolution> sols;

    auto singleton = [](uint16_t d) { return d && !(d & (d - 1)); };
    auto value_of = [](uint16_t d) {
        for (int v = 0; v < 8; ++v)
            if (d & (1 << v)) return v;
        return -1;
    };

    // returns false on wipe-out
    auto propagate = [&](std::vector<uint16_t>& d) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const CEq& eq : eqs) {
                int unassigned = -1, ucoeff = 0, sum = eq.rhs;
                bool multi = false;
                for (auto& [id, co] : eq.terms) {
                    if (singleton(d[id]))
                        sum -= co * value_of(d[id]);
                    else if (unassigned < 0) {
                        unassigned = id;
                        ucoeff = co;
                    } else
                        multi = true;
                }
                if (multi) continue;
                if (unassigned < 0) {
                    if (((sum % 8) + 8) % 8 != 0) return false;
                    continue;
                }
                uint16_t nd = 0;
                for (int v = 0; v < 8; ++v)
                    if ((d[unassigned] & (1 << v)) &&
                        ((ucoeff * v - sum) % 8 + 8) % 8 == 0)
                        nd |= (1 << v);
                if (nd == 0) return false;
                if (nd != d[unassigned]) {
                    d[unassigned] = nd;
                    changed = true;
                }
            }
        }
        return true;
    };

    auto record = [&](const std::vector<uint16_t>& d) {
        FRSolution s;
        for (auto& [key, id] : fvar) s.fexp[key] = value_of(d[id]);
        for (auto& [key, id] : rvar) s.rexp[{key[0], key[1]}] = value_of(d[id]);
        sols.push_back(std::move(s));
    };

    auto rec = [&](auto&& self, std::vector<uint16_t> d) -> void {
        if (sols.size() >= max_solutions) return;
        if (!propagate(d)) return;
        int branch = -1, best = 9;
        for (int i = 0; i < nv; ++i) {
            int cnt = __builtin_popcount(d[i]);
            if (cnt > 1 && cnt < best) {
                best = cnt;
                branch = i;
            }
        }
        if (branch < 0) {
            record(d);
            return;
        }
        for (int v = 0; v < 8; ++v) {
            if (!(d[branch] & (1 << v))) continue;
            std::vector<uint16_t> nd = d;
            nd[branch] = (uint16_t)(1 << v);
            self(self, std::move(nd));
        }
    };
    rec(rec, dom);
    return sols;
}

FRSolution sl3_known_solution() {
    FusionRing ring = sl3_coset_ring();
    FRSolution s;
    for (int i = 1; i < 4; ++i)
        for (int j = 1; j < 4; ++j)
            if (i != j) s.fexp[{i, j, i}] = 4;  // value -1
    // braiding phases of one hexagon-compatible solution:
    // R^2 = -1 for i != j (phases +-i) and R^2 = +1 on the diagonal
    for (int i = 1; i < 4; ++i) s.rexp[{i, i}] = 0;
    s.rexp[{1, 2}] = s.rexp[{2, 1}] = s.rexp[{3, 1}] = 2;
    s.rexp[{1, 3}] = s.rexp[{2, 3}] = s.rexp[{3, 2}] = 6;
    return s;
}

// ---------------------------------------------------------------------------
// Commutation constants

GcrConstants sl4_gcr_constants(bool flip_mu54) {
    GcrConstants g;
    const Cyc8 x = Cyc8::zeta(-1);
    const Cyc8 mu_c = x * x;
    const Cyc8 c_c = x / Cyc8::sqrt2();
    const std::vector<std::array<int, 2>> coupled = {
        {1, 2}, {2, 4}, {4, 1}, {1, 5}, {5, 6}, {6, 1},
        {2, 3}, {3, 5}, {5, 2}, {4, 3}, {6, 4}, {3, 6}};
    for (auto& p : coupled) {
        g.mu[p] = mu_c;
        g.c[p] = c_c;
        g.mu[{p[1], p[0]}] = mu_c.inverse();
        g.c[{p[1], p[0]}] = mu_c.inverse() * c_c;  // from c_ij = mu_ij c_ji
    }
    const Cyc8 one(1), minus(Rat(-1));
    g.mu[{1, 3}] = g.mu[{3, 1}] = one;
    g.mu[{2, 6}] = g.mu[{6, 2}] = one;
    g.mu[{5, 4}] = g.mu[{4, 5}] = flip_mu54 ? one : minus;
    return g;
}

std::vector<std::string> gcr_residuals(const GcrConstants& g) {
    std::vector<std::string> bad;
    auto mu = [&](int i, int j) { return g.mu.at({i, j}); };
    auto c = [&](int i, int j) { return g.c.at({i, j}); };
    for (auto& [key, v] : g.mu)
        if ((v * mu(key[1], key[0])) != Cyc8(1)) {
            bad.push_back("mu(" + std::to_string(key[0]) +
                          std::to_string(key[1]) + ") mu(ji) != 1");
        }
    for (auto& [key, v] : g.c)
        if (v != mu(key[0], key[1]) * c(key[1], key[0])) {
            bad.push_back("c(" + std::to_string(key[0]) +
                          std::to_string(key[1]) + ") != mu c(ji)");
        }
    // associativity of psi5 psi4 |0> resolved through the two fusion paths
    if (mu(5, 4) != c(1, 4) * c(2, 1) / (mu(2, 6) * c(6, 1) * c(1, 5)))
        bad.push_back("mu54 != c14 c21 / (mu26 c61 c15)");
    if (mu(5, 4) != c(1, 2) * c(6, 4) / (c(1, 6) * c(2, 5)))
        bad.push_back("mu54 != c12 c64 / (c16 c25)");
    // expanding psi5 via {1,5} instead of {1,6}
    if (c(1, 2) * c(1, 4) != c(5, 1) * c(6, 1))
        bad.push_back("c12 c14 != c51 c61");
    if (c(5, 2) * c(6, 1) != c(1, 2) * c(6, 4))
        bad.push_back("c52 c61 != c12 c64");
    return bad;
}

}  // namespace qchar
