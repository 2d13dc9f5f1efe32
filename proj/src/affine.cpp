#include "qchar/affine.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace qchar {

// ---------------------------------------------------------------------------
// RootSystemA
// ---------------------------------------------------------------------------

RootSystemA::RootSystemA(int rank) : n(rank) {
    if (n < 1) throw std::invalid_argument("RootSystemA: rank >= 1");
    cartan.assign(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i) {
        cartan[i][i] = 2;
        if (i + 1 < n) cartan[i][i + 1] = cartan[i + 1][i] = -1;
    }
    // (C^{-1})_{ij} = min(i,j) * (n+1-max(i,j)) / (n+1), 1-indexed.
    cartan_inv.assign(n, std::vector<Rat>(n));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            cartan_inv[i - 1][j - 1] =
                Rat((long long)std::min(i, j) * (n + 1 - std::max(i, j)), n + 1);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            RootCoords c(n, 0);
            for (int t = i; t <= j; ++t) c[t] = 1;
            pos_roots.push_back(c);
        }
}

Labels RootSystemA::theta_labels() const { return root_to_weight(theta_coords()); }

Rat RootSystemA::ip_weight(const Labels& a, const Labels& b) const {
    Rat acc = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc += Rat(a[i]) * cartan_inv[i][j] * Rat(b[j]);
    return acc;
}

long long RootSystemA::ip_weight_root(const Labels& lam, const RootCoords& c) const {
    long long acc = 0;
    for (int i = 0; i < n; ++i) acc += lam[i] * c[i];
    return acc;
}

long long RootSystemA::ip_root(const RootCoords& a, const RootCoords& b) const {
    long long acc = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc += a[i] * cartan[i][j] * b[j];
    return acc;
}

Labels RootSystemA::root_to_weight(const RootCoords& c) const {
    Labels lam(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) lam[i] += cartan[i][j] * c[j];
    return lam;
}

std::vector<Rat> RootSystemA::weight_to_root(const Labels& lam) const {
    std::vector<Rat> c(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c[i] += cartan_inv[i][j] * Rat(lam[j]);
    return c;
}

bool RootSystemA::in_root_lattice(const Labels& lam) const {
    for (const Rat& c : weight_to_root(lam))
        if (denominator(c) != 1) return false;
    return true;
}

Labels RootSystemA::dominantize(Labels lam, int* sign) const {
    int s = 1;
    bool again = true;
    while (again) {
        again = false;
        for (int i = 0; i < n; ++i) {
            if (lam[i] < 0) {
                long long li = lam[i];
                for (int j = 0; j < n; ++j) lam[j] -= li * cartan[j][i];
                s = -s;
                again = true;
            }
        }
    }
    // lam may sit on a wall (some label 0); then the stabilizer is nontrivial
    // and the sign is only meaningful for regular weights.
    if (sign) *sign = s;
    return lam;
}

Labels RootSystemA::alcove_representative(Labels lam, long long k) const {
    for (int guard = 0; guard < 100000; ++guard) {
        lam = dominantize(lam);
        long long t = 0;
        for (int i = 0; i < n; ++i) t += lam[i]; // (lam, theta)
        if (t <= k) return lam;
        Labels th = theta_labels();
        for (int i = 0; i < n; ++i) lam[i] -= (t - k) * th[i];
    }
    throw std::runtime_error("alcove_representative: did not converge");
}

std::vector<Labels> RootSystemA::alcove_weights(long long k) const {
    std::vector<Labels> out;
    Labels lam(n, 0);
    auto rec = [&](auto&& self, int i, long long left) -> void {
        if (i == n) {
            out.push_back(lam);
            return;
        }
        for (long long v = 0; v <= left; ++v) {
            lam[i] = v;
            self(self, i + 1, left - v);
        }
    };
    rec(rec, 0, k);
    return out;
}

// ---------------------------------------------------------------------------
// StringEngine: affine Freudenthal recursion
// ---------------------------------------------------------------------------

StringEngine::StringEngine(int rank, long long level) : rs_(rank), k_(level) {
    if (level < 1) throw std::invalid_argument("StringEngine: level >= 1");
}

long long StringEngine::lookup(const Table& t, const Labels& Lambda, Labels nu,
                               long long d) const {
    if (d < 0) return 0;
    nu = rs_.dominantize(nu);
    // nu must lie under Lambda + d*theta in the root cone.
    Labels top = Lambda;
    Labels th = rs_.theta_labels();
    for (int i = 0; i < rs_.n; ++i) top[i] += d * th[i] - nu[i];
    for (const Rat& c : rs_.weight_to_root(top))
        if (denominator(c) != 1 || c < 0) return 0;
    auto it = t.m.find({nu, d});
    return it == t.m.end() ? 0 : it->second;
}

void StringEngine::ensure(const Labels& Lambda, long long dmax) {
    Table& t = tables_[Lambda];
    if (t.dmax < 0) load_cache(Lambda, t);
    if (t.dmax >= dmax) return;

    const int n = rs_.n;
    const long long h = rs_.dual_coxeter();
    const Labels rho = rs_.rho();
    const Labels th = rs_.theta_labels();
    Labels Lr = Lambda;
    for (int i = 0; i < n; ++i) Lr[i] += rho[i];
    const Rat norm_L = rs_.norm2(Lr);

    // All roots (positive and negative) as root coords.
    std::vector<RootCoords> all_roots = rs_.pos_roots;
    for (const auto& a : rs_.pos_roots) {
        RootCoords neg(a);
        for (auto& x : neg) x = -x;
        all_roots.push_back(neg);
    }

    for (long long d = t.dmax + 1; d <= dmax; ++d) {
        // Height bound: Lambda + d*theta - mu = sum c_i alpha_i with
        // sum c_i = (Lambda + d*theta - mu, rho) <= (Lambda + d*theta, rho).
        Labels topw = Lambda;
        for (int i = 0; i < n; ++i) topw[i] += d * th[i];
        long long H = rat_floor(rs_.ip_weight(topw, rho));

        // Candidates: dominant mu, ordered by increasing height of the
        // defect vector c (same-grade recursion consults strictly smaller
        // heights only).
        std::vector<std::pair<long long, Labels>> cand; // (height, mu)
        RootCoords c(n, 0);
        auto rec = [&](auto&& self, int i, long long left) -> void {
            if (i == n) {
                Labels mu = topw;
                Labels cw = rs_.root_to_weight(c);
                bool dom = true;
                for (int j = 0; j < n; ++j) {
                    mu[j] -= cw[j];
                    if (mu[j] < 0) dom = false;
                }
                if (dom) {
                    long long ht = 0;
                    for (long long x : c) ht += x;
                    cand.emplace_back(ht, mu);
                }
                return;
            }
            for (long long v = 0; v <= left; ++v) {
                c[i] = v;
                self(self, i + 1, left - v);
            }
            c[i] = 0;
        };
        rec(rec, 0, H);
        std::stable_sort(cand.begin(), cand.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });

        for (const auto& [ht, mu] : cand) {
            if (d == 0 && mu == Lambda) {
                t.m[{mu, 0}] = 1;
                continue;
            }
            Labels mr = mu;
            for (int i = 0; i < n; ++i) mr[i] += rho[i];
            Rat denom = norm_L - rs_.norm2(mr) + Rat(2 * (k_ + h) * d);
            long long den_int = rat_to_int(denom * (n + 1));

            long long rhs = 0; // integral; scaled by (n+1) only at division
            long long pcap = H + 2;
            // (1) same grade, positive roots
            for (const auto& a : rs_.pos_roots) {
                long long aa = rs_.ip_root(a, a);
                long long ma = rs_.ip_weight_root(mu, a);
                Labels aw = rs_.root_to_weight(a);
                Labels nu = mu;
                for (long long p = 1; p <= pcap; ++p) {
                    for (int i = 0; i < n; ++i) nu[i] += aw[i];
                    long long M = lookup(t, Lambda, nu, d);
                    if (M) rhs += 2 * (ma + p * aa) * M;
                }
            }
            // (2) lower grades, real affine roots alpha + m*delta
            for (long long m = 1; m <= d; ++m) {
                for (const auto& a : all_roots) {
                    long long aa = rs_.ip_root(a, a);
                    long long ma = rs_.ip_weight_root(mu, a);
                    Labels aw = rs_.root_to_weight(a);
                    Labels nu = mu;
                    for (long long p = 1; p * m <= d; ++p) {
                        for (int i = 0; i < n; ++i) nu[i] += aw[i];
                        long long M = lookup(t, Lambda, nu, d - p * m);
                        if (M) rhs += 2 * (ma + p * aa + k_ * m) * M;
                    }
                }
                // (3) imaginary roots m*delta with multiplicity n
                for (long long p = 1; p * m <= d; ++p) {
                    long long M = lookup(t, Lambda, mu, d - p * m);
                    if (M) rhs += 2 * n * k_ * m * M;
                }
            }
            if (den_int <= 0) {
                // Not a weight of the module (the recursion must agree).
                if (rhs != 0)
                    throw std::runtime_error("StringEngine: inconsistent zero denominator");
                continue;
            }
            long long num = rhs * (n + 1);
            if (num % den_int != 0)
                throw std::runtime_error("StringEngine: non-integral multiplicity");
            long long M = num / den_int;
            if (M < 0) throw std::runtime_error("StringEngine: negative multiplicity");
            if (M) t.m[{mu, d}] = M;
        }
        t.dmax = d;
    }
    save_cache(Lambda, t);
}

long long StringEngine::mult(const Labels& Lambda, const Labels& nu, long long d) {
    ensure(Lambda, d);
    return lookup(tables_[Lambda], Lambda, nu, d);
}

Rat StringEngine::anomaly(const Labels& Lambda) const {
    Labels Lr = Lambda;
    for (int i = 0; i < rs_.n; ++i) Lr[i] += 1;
    return rs_.norm2(Lr) / (2 * (k_ + rs_.dual_coxeter())) - Rat(rs_.dim(), 24);
}

QSeries StringEngine::string_function(const Labels& Lambda, const Labels& lambda,
                                      const Rat& T) {
    Labels lc = rs_.alcove_representative(lambda, k_);
    // Nonzero only if lambda is in Lambda + Q.
    Labels diff = Lambda;
    for (int i = 0; i < rs_.n; ++i) diff[i] -= lc[i];
    if (!rs_.in_root_lattice(diff)) return QSeries::zero(T);

    Rat pref = anomaly(Lambda) - rs_.norm2(lc) / (2 * k_);
    long long dmax = rat_ceil(T - pref) - 1;
    if (dmax < 0) return QSeries::zero(T);
    ensure(Lambda, dmax);
    QSeries s = QSeries::zero(T);
    const Table& t = tables_.at(Lambda);
    for (long long d = 0; d <= dmax; ++d) {
        long long M = lookup(t, Lambda, lc, d);
        if (M) s += QSeries::monomial(M, pref + d);
    }
    return s.truncated(T);
}

QSeries StringEngine::coset_character(const Labels& Lambda, const Labels& lambda,
                                      const Rat& T) {
    Rat pad = 2;
    Rat Tp = T + pad;
    QSeries c = string_function(Lambda, lambda, Tp);
    QSeries e = eta(1, Tp).pow(rs_.n);
    return (c * e).truncated(T);
}

std::map<std::pair<Labels, long long>, long long>
StringEngine::character_table(const Labels& Lambda, long long dmax) {
    ensure(Lambda, dmax);
    std::map<std::pair<Labels, long long>, long long> out;
    for (const auto& [key, M] : tables_.at(Lambda).m)
        if (key.second <= dmax) out.emplace(key, M);
    return out;
}

std::string StringEngine::cache_path(const Labels& Lambda) const {
    const char* dir = std::getenv("QCHAR_CACHE_DIR");
    if (!dir || !*dir) return {};
    std::ostringstream os;
    os << dir << "/strtab_n" << rs_.n << "_k" << k_ << "_L";
    for (long long x : Lambda) os << x << "_";
    os << ".txt";
    return os.str();
}

void StringEngine::load_cache(const Labels& Lambda, Table& t) const {
    std::string path = cache_path(Lambda);
    if (path.empty()) return;
    std::ifstream in(path);
    if (!in) return;
    long long dmax;
    if (!(in >> dmax)) return;
    Table fresh;
    long long d, M;
    Labels nu(rs_.n);
    while (in >> d) {
        for (int i = 0; i < rs_.n; ++i)
            if (!(in >> nu[i])) return;
        if (!(in >> M)) return;
        fresh.m[{nu, d}] = M;
    }
    fresh.dmax = dmax;
    t = std::move(fresh);
}

void StringEngine::save_cache(const Labels& Lambda, const Table& t) const {
    std::string path = cache_path(Lambda);
    if (path.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(std::filesystem::path(path).parent_path(), ec);
    std::ofstream out(path);
    if (!out) return;
    out << t.dmax << "\n";
    for (const auto& [key, M] : t.m) {
        out << key.second;
        for (long long x : key.first) out << " " << x;
        out << " " << M << "\n";
    }
}

// ---------------------------------------------------------------------------
// Weyl-Kac character oracle
// ---------------------------------------------------------------------------

namespace {

// Weight in the orthogonal (epsilon) realization, scaled by n+1 so entries
// stay integral.
std::vector<long long> eps_scaled(const RootSystemA& rs, const Labels& lam) {
    int n = rs.n;
    std::vector<long long> v(n + 1, 0);
    long long tot = 0;
    for (int j = 0; j < n; ++j) tot += (long long)(j + 1) * lam[j];
    for (int i = 0; i <= n; ++i) {
        long long s = 0;
        for (int j = i; j < n; ++j) s += lam[j]; // lam_j for j >= i (0-based)
        v[i] = (n + 1) * s - tot;
    }
    return v;
}

Labels labels_from_eps_scaled(const RootSystemA& rs, const std::vector<long long>& v) {
    Labels lam(rs.n);
    for (int i = 0; i < rs.n; ++i) {
        long long diff = v[i] - v[i + 1];
        if (diff % (rs.n + 1) != 0)
            throw std::runtime_error("labels_from_eps_scaled: not a weight");
        lam[i] = diff / (rs.n + 1);
    }
    return lam;
}

using TermMap = std::map<std::pair<RootCoords, long long>, long long>;

long long pdeg(int n, const RootCoords& c, long long d) {
    long long s = 0;
    for (long long x : c) s += x;
    return (long long)(n + 1) * d - s;
}

} // namespace

std::vector<std::pair<int, Labels>> weyl_group_images(const RootSystemA& rs,
                                                      const Labels& lam) {
    const int n = rs.n;
    std::vector<long long> v = eps_scaled(rs, lam);
    std::vector<int> perm(n + 1);
    for (int i = 0; i <= n; ++i) perm[i] = i;
    std::vector<std::pair<int, Labels>> out;
    do {
        int inv = 0;
        for (int i = 0; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                if (perm[i] > perm[j]) ++inv;
        std::vector<long long> w(n + 1);
        for (int i = 0; i <= n; ++i) w[i] = v[perm[i]];
        out.emplace_back((inv % 2) ? -1 : 1, labels_from_eps_scaled(rs, w));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

std::map<std::pair<Labels, long long>, long long>
weyl_kac_character_table(int rank, long long level, const Labels& Lambda, long long dmax) {
    RootSystemA rs(rank);
    const int n = rank;
    const long long L = level + rs.dual_coxeter();
    Labels mu = Lambda;
    for (int i = 0; i < n; ++i) mu[i] += 1; // Lambda + rho
    const Rat mu2 = rs.norm2(mu);

    // Principal-degree cap: all wanted character terms have
    // pd = d + height(defect) <= dmax + (Lambda + dmax*theta, rho).
    Labels topw = Lambda;
    Labels th = rs.theta_labels();
    for (int i = 0; i < n; ++i) topw[i] += dmax * th[i];
    const long long P = dmax + rat_floor(rs.ip_weight(topw, rs.rho()));

    // --- numerator: sum over translations t_gamma and finite Weyl elements
    double mun = std::sqrt(rat_to_double(mu2));
    double R = (mun + std::sqrt(mun * mun + 2.0 * L * (dmax + 1))) / (double)L;
    std::vector<std::vector<Rat>> gramC(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) gramC[i][j] = rs.cartan[i][j];
    Rat Tgamma = Rat((long long)std::ceil(R * R / 2) + 1);
    auto gammas = lattice_points_below(gramC, std::vector<Rat>(n, 0), Tgamma);

    std::vector<long long> mu_eps = eps_scaled(rs, mu);
    std::vector<int> perm(n + 1);
    for (int i = 0; i <= n; ++i) perm[i] = i;

    std::vector<TermMap> N(P + 1);
    std::sort(perm.begin(), perm.end());
    do {
        // permutation sign by inversion count
        int inv = 0;
        for (int i = 0; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                if (perm[i] > perm[j]) ++inv;
        long long sgn = (inv % 2) ? -1 : 1;
        std::vector<long long> wmu(n + 1);
        for (int i = 0; i <= n; ++i) wmu[i] = mu_eps[perm[i]];
        Labels wmu_lab = labels_from_eps_scaled(rs, wmu);

        for (const auto& g : gammas) {
            // gamma in eps coordinates (integral)
            std::vector<long long> geps(n + 1, 0);
            for (int i = 0; i < n; ++i) {
                geps[i] += g[i];
                geps[i + 1] -= g[i];
            }
            long long dot = 0; // (w(mu), gamma), exact
            for (int i = 0; i <= n; ++i) dot += wmu[i] * geps[i];
            if (dot % (n + 1) != 0) throw std::runtime_error("weyl_kac: bad pairing");
            dot /= (n + 1);
            long long g2 = rs.ip_root(g, g);
            long long qexp = dot + L * g2 / 2;
            if (qexp > dmax || qexp < 0) continue;

            // z-offset: root coords of w(mu) + L*gamma - rho - Lambda
            Labels lab = wmu_lab;
            Labels Lg = rs.root_to_weight(g);
            for (int i = 0; i < n; ++i) lab[i] += L * Lg[i] - 1 - Lambda[i];
            std::vector<Rat> cr = rs.weight_to_root(lab);
            RootCoords c(n);
            for (int i = 0; i < n; ++i) c[i] = rat_to_int(cr[i]);
            long long p = pdeg(n, c, qexp);
            if (p < 0 || p > P) continue;
            N[p][{c, qexp}] += sgn;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    // --- denominator tail terms, graded by principal degree
    TermMap D;
    D[{RootCoords(n, 0), 0}] = 1;
    auto mult_factor = [&](const RootCoords& c, long long d, long long coeff) {
        // multiply D by (1 + coeff * z^c q^d), truncated
        TermMap add;
        for (const auto& [key, v] : D) {
            RootCoords nc = key.first;
            for (int i = 0; i < n; ++i) nc[i] += c[i];
            long long nd = key.second + d;
            if (nd > dmax) continue;
            long long p = pdeg(n, nc, nd);
            if (p > P) continue;
            add[{nc, nd}] += coeff * v;
        }
        for (const auto& [key, v] : add) {
            D[key] += v;
            if (D[key] == 0) D.erase(key);
        }
    };
    for (const auto& a : rs.pos_roots) {
        RootCoords neg(a);
        for (auto& x : neg) x = -x;
        mult_factor(neg, 0, -1);
    }
    for (long long m = 1; m <= dmax; ++m) {
        for (int i = 0; i < n; ++i) mult_factor(RootCoords(n, 0), m, -1);
        for (const auto& a : rs.pos_roots) {
            RootCoords neg(a);
            for (auto& x : neg) x = -x;
            mult_factor(neg, m, -1);
            mult_factor(a, m, -1);
        }
    }
    std::vector<TermMap> E(P + 1); // D = 1 + tail; tail graded by pd
    for (const auto& [key, v] : D) {
        long long p = pdeg(n, key.first, key.second);
        if (p == 0) {
            if (key.first != RootCoords(n, 0) || key.second != 0 || v != 1)
                throw std::runtime_error("weyl_kac: denominator constant term");
            continue;
        }
        E[p][key] = v;
    }

    // --- divide: ch = N - tail * ch, level by level in principal degree
    std::vector<TermMap> ch(P + 1);
    for (long long p = 0; p <= P; ++p) {
        TermMap cur = N[p];
        for (long long e = 1; e <= p; ++e) {
            if (E[e].empty() || ch[p - e].empty()) continue;
            for (const auto& [tk, tv] : E[e]) {
                for (const auto& [ck, cv] : ch[p - e]) {
                    RootCoords nc = tk.first;
                    for (int i = 0; i < n; ++i) nc[i] += ck.first[i];
                    long long nd = tk.second + ck.second;
                    if (nd > dmax) continue;
                    cur[{nc, nd}] -= tv * cv;
                }
            }
        }
        for (auto it = cur.begin(); it != cur.end();)
            it = (it->second == 0) ? cur.erase(it) : std::next(it);
        ch[p] = std::move(cur);
    }

    std::map<std::pair<Labels, long long>, long long> out;
    for (long long p = 0; p <= P; ++p) {
        for (const auto& [key, v] : ch[p]) {
            Labels nu = Lambda;
            Labels cw = rs.root_to_weight(key.first);
            for (int i = 0; i < n; ++i) nu[i] += cw[i];
            if (v != 0) out[{nu, key.second}] += v;
        }
    }
    for (auto it = out.begin(); it != out.end();)
        it = (it->second == 0) ? out.erase(it) : std::next(it);
    return out;
}

// ---------------------------------------------------------------------------
// Theta decomposition of the full character
// ---------------------------------------------------------------------------

namespace {

// Full Weyl orbit of a weight (labels), by closure under simple reflections.
std::vector<Labels> weyl_orbit(const RootSystemA& rs, const Labels& lam) {
    std::vector<Labels> orbit{rs.dominantize(lam)};
    std::map<Labels, bool> seen{{orbit[0], true}};
    for (size_t i = 0; i < orbit.size(); ++i) {
        for (int s = 0; s < rs.n; ++s) {
            Labels m = orbit[i];
            long long ms = m[s];
            for (int j = 0; j < rs.n; ++j) m[j] -= ms * rs.cartan[j][s];
            if (!seen[m]) {
                seen[m] = true;
                orbit.push_back(m);
            }
        }
    }
    return orbit;
}

} // namespace

std::optional<Rat> theta_decomposition_mismatch(StringEngine& eng, const Labels& Lambda,
                                                long long dmax) {
    const RootSystemA& rs = eng.roots();
    const int n = rs.n;
    const long long k = eng.level();
    const Rat T = Rat(dmax + 1);

    // LHS: sum over all weights of z^{nu (root coords)} q^d.
    MultiSeries lhs = MultiSeries::zero(n, T);
    for (const auto& [key, M] : eng.character_table(Lambda, dmax)) {
        for (const Labels& nu : weyl_orbit(rs, key.first)) {
            std::vector<Rat> zc = rs.weight_to_root(nu);
            lhs += MultiSeries::monomial(n, M, Rat(key.second), zc);
        }
    }

    // RHS: sum over alcove classes congruent to Lambda mod Q.
    std::vector<std::vector<Rat>> gram(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) gram[i][j] = Rat(k * rs.cartan[i][j]);
    // Classes run over (Lambda + Q) mod k*Q: representatives
    // Lambda + C*m with m in {0..k-1}^n.
    std::vector<Labels> reps;
    {
        RootCoords m(n, 0);
        auto rec = [&](auto&& self, int i) -> void {
            if (i == n) {
                Labels lc = Lambda;
                Labels mw = rs.root_to_weight(m);
                for (int j = 0; j < n; ++j) lc[j] += mw[j];
                reps.push_back(lc);
                return;
            }
            for (long long v = 0; v < k; ++v) {
                m[i] = v;
                self(self, i + 1);
            }
        };
        rec(rec, 0);
    }
    MultiSeries rhs = MultiSeries::zero(n, T);
    for (const Labels& lc : reps) {
        Rat pref = -rs.norm2(lc) / (2 * k);
        // String series through lc: multiplicities are affine-Weyl
        // invariant, so the lookup through the dominant representative
        // provides the shifted string.
        QSeries S = QSeries::zero(T);
        for (long long d = 0; d <= dmax; ++d) {
            long long M = eng.mult(Lambda, lc, d);
            if (M) S += QSeries::monomial(M, Rat(d));
        }
        // Theta_{lc}: gamma runs over lc/k + Q.
        std::vector<Rat> shift = rs.weight_to_root(lc);
        for (auto& x : shift) x /= k;
        MultiSeries theta = MultiSeries::zero(n, T - pref);
        for (const auto& g : lattice_points_below(gram, shift, T - pref)) {
            std::vector<Rat> gamma(n), zc(n);
            for (int i = 0; i < n; ++i) {
                gamma[i] = Rat(g[i]) + shift[i];
                zc[i] = Rat(k) * gamma[i];
            }
            theta += MultiSeries::monomial(n, 1, quadratic_value(gram, gamma), zc);
        }
        rhs += (MultiSeries::lift(n, S) * theta * MultiSeries::monomial(
                    n, 1, pref, std::vector<Rat>(n, 0))).truncated(T);
    }
    return lhs.first_mismatch(rhs, T);
}

} // namespace qchar
