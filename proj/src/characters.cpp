#include "qchar/characters.hpp"

#include <cmath>
#include <stdexcept>

namespace qchar {

Rat minimal_cc(long long p, long long pp) {
    return 1 - Rat(6 * (p - pp) * (p - pp), p * pp);
}

Rat minimal_h(long long p, long long pp, long long r, long long s) {
    long long t = pp * r - p * s;
    return Rat(t * t - (p - pp) * (p - pp), 4 * p * pp);
}

QSeries minimal_char(long long p, long long pp, long long r, long long s, const Rat& T) {
    if (r < 1 || r >= p || s < 1 || s >= pp)
        throw std::invalid_argument("minimal_char: (r,s) outside the Kac table");
    Rat Tp = T + 1; // room for the eta^{-1} factor (ord 1/24)
    QSeries num = QSeries::zero(Tp);
    auto add = [&](long long a, int sgn) {
        // exponents (a + 2pp'k)^2/(4pp') over k in Z
        for (long long k = 0;; ++k) {
            Rat e1 = Rat((a + 2 * p * pp * k) * (a + 2 * p * pp * k), 4 * p * pp);
            long long b = a - 2 * p * pp * (k + 1);
            Rat e2 = Rat(b * b, 4 * p * pp);
            bool any = false;
            if (e1 < Tp) { num += QSeries::monomial(sgn, e1); any = true; }
            if (e2 < Tp) { num += QSeries::monomial(sgn, e2); any = true; }
            if (!any) break;
        }
    };
    add(pp * r - p * s, +1);
    add(pp * r + p * s, -1);
    return (num * eta_quotient({{1, -1}}, Tp)).truncated(T);
}

QSeries minimal_char_by_h(long long p, long long pp, const Rat& h, const Rat& T) {
    for (long long r = 1; r < p; ++r)
        for (long long s = 1; s < pp; ++s)
            if (minimal_h(p, pp, r, s) == h) return minimal_char(p, pp, r, s, T);
    throw std::invalid_argument("minimal_char_by_h: weight not in the Kac table");
}

QSeries free_fermion_sum(const Rat& T) {
    return (QSeries::monomial(1, Rat(-1, 48)) *
            poch_inf(-1, Rat(1, 2), 1, T + 1)).truncated(T);
}

QSeries free_fermion_diff(const Rat& T) {
    return (QSeries::monomial(1, Rat(-1, 48)) *
            poch_inf(1, Rat(1, 2), 1, T + 1)).truncated(T);
}

QSeries free_fermion_sigma(const Rat& T) {
    return (QSeries::monomial(2, Rat(1, 24)) * poch_inf(-1, 1, 1, T + 1)).truncated(T);
}

Rat w3_cc(long long m) { return 2 - Rat(24, m * (m + 1)); }

Rat w3_h(long long m, const Labels& Lp, const Labels& Lm) {
    RootSystemA rs(2);
    Labels v(2);
    for (int i = 0; i < 2; ++i) v[i] = (m + 1) * (Lp[i] + 1) - m * (Lm[i] + 1);
    return (w3_cc(m) - 2) / 24 + rs.norm2(v) / (2 * m * (m + 1));
}

QSeries w3_character(long long m, const Labels& Lp, const Labels& Lm, const Rat& T) {
    RootSystemA rs(2);
    const long long M = m * (m + 1);
    Rat Tp = T + 1; // eta^{-2} ord is 1/12
    QSeries num = QSeries::zero(Tp);

    Labels a = Lp, b = Lm;
    for (int i = 0; i < 2; ++i) { a[i] += 1; b[i] += 1; }
    std::vector<std::vector<Rat>> gramC(2, std::vector<Rat>(2));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) gramC[i][j] = rs.cartan[i][j];

    for (const auto& [sgn, wa] : weyl_group_images(rs, a)) {
        // v = (m+1) w(a) - m b; exponent |v + M*C*gamma-ish|^2/(2M) over gamma in Q
        Labels v(2);
        for (int i = 0; i < 2; ++i) v[i] = (m + 1) * wa[i] - m * b[i];
        double vn = std::sqrt(rat_to_double(rs.norm2(v)));
        double R = (vn + std::sqrt(vn * vn + 2.0 * M * rat_to_double(Tp))) / M;
        Rat Tg = Rat((long long)std::ceil(R * R / 2) + 1);
        for (const auto& g : lattice_points_below(gramC, {0, 0}, Tg)) {
            Labels u = v;
            Labels gw = rs.root_to_weight(g);
            for (int i = 0; i < 2; ++i) u[i] += M * gw[i];
            Rat e = rs.norm2(u) / (2 * M);
            if (e < Tp) num += QSeries::monomial(sgn, e);
        }
    }
    return (num * eta_quotient({{1, -2}}, Tp)).truncated(T);
}

QSeries lattice_character(const std::vector<std::vector<Rat>>& gram,
                          const std::vector<Rat>& shift, const Rat& T) {
    int d = (int)gram.size();
    Rat Tp = T + Rat(d, 12) + 1;
    return (theta_lattice(gram, shift, Tp) * eta_quotient({{1, -d}}, Tp)).truncated(T);
}

std::vector<Rat> rho_root_coords(int n) {
    RootSystemA rs(n);
    return rs.weight_to_root(rs.rho());
}

MultiSeries fermion_multichar_R(int n, const Rat& T) {
    RootSystemA rs(n);
    const Rat Tp = T + 1;
    // No overall q-power: with this normalization the z^rho coefficient
    // is directly a string function of level n+1 (leading term q^0).
    MultiSeries acc = MultiSeries::monomial(n, 1, 0, rho_root_coords(n));
    for (const auto& a : rs.pos_roots) {
        std::vector<Rat> neg(n);
        for (int i = 0; i < n; ++i) neg[i] = -Rat(a[i]);
        acc = (acc * (MultiSeries::one(n) + MultiSeries::monomial(n, 1, 0, neg)))
                  .truncated(Tp);
    }
    for (long long k = 1; Rat(k) < Tp; ++k) {
        QSeries f = QSeries::one() + QSeries::monomial(1, k);
        acc = (acc * MultiSeries::lift(n, f.pow(n))).truncated(Tp);
        for (const auto& a : rs.pos_roots) {
            std::vector<Rat> pos(n), neg(n);
            for (int i = 0; i < n; ++i) {
                pos[i] = Rat(a[i]);
                neg[i] = -Rat(a[i]);
            }
            acc = (acc * (MultiSeries::one(n) + MultiSeries::monomial(n, 1, k, pos)))
                      .truncated(Tp);
            acc = (acc * (MultiSeries::one(n) + MultiSeries::monomial(n, 1, k, neg)))
                      .truncated(Tp);
        }
    }
    return acc.truncated(T);
}

MultiSeries fermion_multichar_NS(int n, int sign, const Rat& T) {
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("fermion_multichar_NS: sign must be +-1");
    RootSystemA rs(n);
    const Rat Tp = T + 1;
    MultiSeries acc = MultiSeries::monomial(n, 1, Rat(-(n * n + 2 * n), 48),
                                            std::vector<Rat>(n, 0));
    for (Rat e = Rat(1, 2); e < Tp; e += 1) {
        QSeries f = QSeries::one() + QSeries::monomial(sign, e);
        acc = (acc * MultiSeries::lift(n, f.pow(n))).truncated(Tp);
        for (const auto& a : rs.pos_roots) {
            std::vector<Rat> pos(n), neg(n);
            for (int i = 0; i < n; ++i) {
                pos[i] = Rat(a[i]);
                neg[i] = -Rat(a[i]);
            }
            acc = (acc * (MultiSeries::one(n) + MultiSeries::monomial(n, sign, e, pos)))
                      .truncated(Tp);
            acc = (acc * (MultiSeries::one(n) + MultiSeries::monomial(n, sign, e, neg)))
                      .truncated(Tp);
        }
    }
    return acc.truncated(T);
}

Rat parafermion_weight(const RootSystemA& rs, long long k, const Labels& Lambda,
                       const Labels& lambda, long long offset) {
    Labels L2r = Lambda;
    for (int i = 0; i < rs.n; ++i) L2r[i] += 2;
    return rs.ip_weight(Lambda, L2r) / (2 * (k + rs.dual_coxeter())) -
           rs.norm2(lambda) / (2 * k) + offset;
}

} // namespace qchar
