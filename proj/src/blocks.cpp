#include "qchar/blocks.hpp"

#include <cmath>
#include <stdexcept>

namespace qchar {

QSeries poch_finite(const Rat& coeff, const Rat& aexp, const Rat& step,
                    long long count, const Rat& T) {
    QSeries acc = QSeries::one().truncated(T);
    for (long long j = 0; j < count; ++j) {
        Rat e = aexp + step * j;
        if (e >= T && coeff != 0 && e > 0) continue; // factor is 1 + O(q^T)
        QSeries f = QSeries::one() - QSeries::monomial(coeff, e);
        acc = (acc * f).truncated(T);
    }
    return acc;
}

QSeries poch_inf(const Rat& coeff, const Rat& aexp, const Rat& step, const Rat& T) {
    if (step <= 0 || aexp <= 0)
        throw std::invalid_argument("poch_inf: need step > 0 and aexp > 0");
    QSeries acc = QSeries::one().truncated(T);
    for (Rat e = aexp; e < T; e += step) {
        QSeries f = QSeries::one() - QSeries::monomial(coeff, e);
        acc = (acc * f).truncated(T);
    }
    return acc;
}

QSeries euler_phi(const Rat& T) {
    // (q;q)_inf = sum_{k in Z} (-1)^k q^{k(3k-1)/2}
    QSeries s = QSeries::zero(T);
    for (long long k = 0;; ++k) {
        Rat e1 = Rat(k * (3 * k - 1), 2);  // k and -k exponents
        Rat e2 = Rat(k * (3 * k + 1), 2);
        if (e1 >= T && e2 >= T && k > 0) break;
        Rat sgn = (k % 2 == 0) ? 1 : -1;
        if (e1 < T) s += QSeries::monomial(sgn, e1);
        if (k > 0 && e2 < T) s += QSeries::monomial(sgn, e2);
        if (k == 0 && e1 >= T) break;
    }
    return s;
}

QSeries eta(const Rat& m, const Rat& T) {
    if (m <= 0) throw std::invalid_argument("eta: need m > 0");
    Rat pref = m / 24;
    // q^{m/24} * sum_k (-1)^k q^{m k(3k-1)/2}
    QSeries s = QSeries::zero(T);
    for (long long k = 0;; ++k) {
        Rat e1 = pref + m * Rat(k * (3 * k - 1), 2);
        Rat e2 = pref + m * Rat(k * (3 * k + 1), 2);
        if (e1 >= T && (k > 0 || e2 >= T)) break;
        Rat sgn = (k % 2 == 0) ? 1 : -1;
        if (e1 < T) s += QSeries::monomial(sgn, e1);
        if (k > 0 && e2 < T) s += QSeries::monomial(sgn, e2);
    }
    return s;
}

QSeries eta_quotient(const std::vector<std::pair<Rat, int>>& factors, const Rat& T) {
    // Inverting eta(m tau) costs m/12 of truncation (cut - 2*ord); pad first.
    Rat pad = 1;
    for (const auto& [m, e] : factors)
        if (e < 0) pad += Rat(-e) * m / 12;
    Rat Tp = T + pad;
    QSeries acc = QSeries::one().truncated(Tp);
    for (const auto& [m, e] : factors) {
        QSeries f = eta(m, Tp);
        acc = acc * (e >= 0 ? f.pow(e) : f.inverse().pow(-e));
    }
    return acc.truncated(T);
}

QSeries gaussian_binomial(long long l, long long m) {
    if (m < 0 || m > l) return QSeries::zero_exact();
    // Pascal recurrence [l, m] = [l-1, m-1] + q^m [l-1, m]; row by row.
    std::vector<QSeries> row(l + 1);
    row[0] = QSeries::one();
    for (long long i = 1; i <= l; ++i) {
        long long top = std::min(i, m);
        for (long long j = top; j >= 1; --j) {
            QSeries left = (j - 1 <= i - 1) ? row[j - 1] : QSeries::zero_exact();
            QSeries up = (j <= i - 1) ? row[j] : QSeries::zero_exact();
            row[j] = left + up * QSeries::monomial(1, j);
        }
    }
    return row[m];
}

MultiSeries ms_poch_finite(int nvars, const Rat& coeff, const Rat& qexp,
                           const std::vector<Rat>& zexp, const Rat& qstep,
                           long long count, const Rat& T) {
    MultiSeries acc = MultiSeries::one(nvars).truncated(T);
    for (long long j = 0; j < count; ++j) {
        Rat e = qexp + qstep * j;
        if (e >= T && e > 0) continue;
        MultiSeries f = MultiSeries::one(nvars) -
                        MultiSeries::monomial(nvars, coeff, e, zexp);
        acc = (acc * f).truncated(T);
    }
    return acc;
}

MultiSeries ms_poch_inf(int nvars, const Rat& coeff, const Rat& qexp,
                        const std::vector<Rat>& zexp, const Rat& qstep, const Rat& T) {
    if (qstep <= 0 || qexp < 0)
        throw std::invalid_argument("ms_poch_inf: need qstep > 0, qexp >= 0");
    MultiSeries acc = MultiSeries::one(nvars).truncated(T);
    for (Rat e = qexp; e < T; e += qstep) {
        MultiSeries f = MultiSeries::one(nvars) -
                        MultiSeries::monomial(nvars, coeff, e, zexp);
        acc = (acc * f).truncated(T);
    }
    return acc;
}

double symmetric_min_eigenvalue(std::vector<std::vector<double>> a) {
    const size_t n = a.size();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (size_t p = 0; p < n; ++p)
            for (size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-24) break;
        for (size_t p = 0; p < n; ++p) {
            for (size_t q = p + 1; q < n; ++q) {
                if (std::fabs(a[p][q]) < 1e-18) continue;
                double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1), s = t * c;
                for (size_t k = 0; k < n; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (size_t k = 0; k < n; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    double mn = a[0][0];
    for (size_t i = 1; i < n; ++i) mn = std::min(mn, a[i][i]);
    return mn;
}

Rat quadratic_value(const std::vector<std::vector<Rat>>& gram,
                    const std::vector<Rat>& x) {
    Rat acc = 0;
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j) acc += x[i] * gram[i][j] * x[j];
    return acc / 2;
}

std::vector<std::vector<long long>> lattice_points_below(
    const std::vector<std::vector<Rat>>& gram, const std::vector<Rat>& shift,
    const Rat& T) {
    const size_t d = gram.size();
    std::vector<std::vector<double>> gd(d, std::vector<double>(d));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) gd[i][j] = rat_to_double(gram[i][j]);
    double lam = symmetric_min_eigenvalue(gd);
    if (lam <= 0)
        throw std::invalid_argument("lattice_points_below: Gram not positive definite");
    // (1/2) lam |x|^2 <= (1/2) x^T G x < T  =>  |x_i| <= sqrt(2T/lam)
    double box = std::sqrt(2 * rat_to_double(T) / lam) + 1e-9;

    std::vector<std::vector<long long>> out;
    std::vector<long long> n(d, 0);
    std::vector<Rat> x(d);
    auto rec = [&](auto&& self, size_t i) -> void {
        if (i == d) {
            for (size_t k = 0; k < d; ++k) x[k] = Rat(n[k]) + shift[k];
            if (quadratic_value(gram, x) < T) out.push_back(n);
            return;
        }
        double s = rat_to_double(shift[i]);
        long long lo = (long long)std::floor(-s - box), hi = (long long)std::ceil(-s + box);
        for (long long v = lo; v <= hi; ++v) {
            n[i] = v;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return out;
}

QSeries theta_lattice(const std::vector<std::vector<Rat>>& gram,
                      const std::vector<Rat>& shift, const Rat& T,
                      const std::vector<long long>* twist) {
    QSeries s = QSeries::zero(T);
    std::vector<Rat> x(gram.size());
    for (const auto& n : lattice_points_below(gram, shift, T)) {
        for (size_t k = 0; k < n.size(); ++k) x[k] = Rat(n[k]) + shift[k];
        Rat sgn = 1;
        if (twist) {
            long long dot = 0;
            for (size_t k = 0; k < n.size(); ++k) dot += (*twist)[k] * n[k];
            if (((dot % 2) + 2) % 2 == 1) sgn = -1;
        }
        s += QSeries::monomial(sgn, quadratic_value(gram, x));
    }
    return s;
}

} // namespace qchar
