#include "qchar/ucpf.hpp"

#include <cmath>
#include <stdexcept>

#include "qchar/blocks.hpp"

namespace qchar {

namespace {

// Cached inverse Pochhammer factors 1/(q)_m, all truncated at the same cut.
class InvPochCache {
  public:
    explicit InvPochCache(const Rat& cut) : cut_(cut) {
        table_.push_back(QSeries::one().truncated(cut_));
    }
    const QSeries& get(long long m) {
        while ((long long)table_.size() <= m) {
            long long k = (long long)table_.size();
            QSeries factor =
                (QSeries::one() - QSeries::monomial(1, k)).truncated(cut_);
            table_.push_back((table_.back() * factor.inverse()).truncated(cut_));
        }
        return table_[m];
    }

  private:
    Rat cut_;
    std::vector<QSeries> table_;
};

struct UcpfBounds {
    std::vector<Rat> min_diag;   // min over m>=0 of (1/2)G_ii m^2 - a_i m
    std::vector<Rat> min_tail;   // sum of min_diag over species > i
    std::vector<long long> vertex;  // smallest m past the parabola vertex
};

UcpfBounds ucpf_bounds(const Mat& gram, const std::vector<Rat>& a) {
    int n = (int)gram.size();
    for (int i = 0; i < n; ++i) {
        if (gram[i][i] <= 0)
            throw std::invalid_argument("ucpf_sum: need positive diagonal");
        for (int j = 0; j < n; ++j)
            if (i != j && gram[i][j] < 0)
                throw std::invalid_argument(
                    "ucpf_sum: need nonnegative off-diagonal entries");
    }
    UcpfBounds b;
    b.min_diag.resize(n);
    b.vertex.resize(n);
    for (int i = 0; i < n; ++i) {
        // minimize (1/2) G_ii m^2 - a_i m over integers m >= 0
        long long v = std::max<long long>(0, rat_ceil(a[i] / gram[i][i]));
        Rat best = 0;
        for (long long m = std::max<long long>(0, v - 1); m <= v + 1; ++m) {
            Rat val = gram[i][i] * m * m / 2 - a[i] * m;
            if (val < best) best = val;
        }
        b.min_diag[i] = best;
        b.vertex[i] = v;
    }
    b.min_tail.assign(n + 1, 0);
    for (int i = n - 1; i >= 0; --i)
        b.min_tail[i] = b.min_tail[i + 1] + b.min_diag[i];
    return b;
}

}  // namespace

QSeries ucpf_sum(const Mat& gram, const std::vector<Rat>& a, bool alternating,
                 const Rat& T) {
    std::vector<int> mask;
    if (alternating) mask.assign(gram.size(), 1);
    return ucpf_sum_signed(gram, a, mask, T);
}

QSeries ucpf_sum_signed(const Mat& gram, const std::vector<Rat>& a,
                        const std::vector<int>& mask, const Rat& T) {
    int n = (int)gram.size();
    UcpfBounds bounds = ucpf_bounds(gram, a);
    Rat cut = T - bounds.min_tail[0];  // slack for negative linear terms
    InvPochCache invp(cut);
    QSeries result = QSeries::zero(cut);
    std::vector<long long> N(n, 0);

    auto rec = [&](auto&& self, int i, const Rat& energy,
                   const QSeries& acc) -> void {
        if (i == n) {
            result = result + acc;
            return;
        }
        Rat cross = 0;
        for (int j = 0; j < i; ++j) cross += gram[j][i] * N[j];
        for (long long m = 0;; ++m) {
            Rat de = gram[i][i] * m * m / 2 + (cross - a[i]) * m;
            if (energy + de + bounds.min_tail[i + 1] >= cut) {
                if (m >= bounds.vertex[i]) break;
                continue;
            }
            N[i] = m;
            QSeries term = acc.shifted(de) * invp.get(m);
            if (!mask.empty() && mask[i] && (m & 1)) term = term.scaled(-1);
            self(self, i + 1, energy + de, term.truncated(cut));
        }
        N[i] = 0;
    };
    rec(rec, 0, 0, QSeries::one().truncated(cut));
    return result.truncated(T);
}

MultiSeries ucpf_sum_z(const Mat& gram, const std::vector<Rat>& a,
                       const std::vector<std::vector<Rat>>& zw,
                       bool alternating, const Rat& T) {
    int n = (int)gram.size();
    int nv = (int)zw.size();
    UcpfBounds bounds = ucpf_bounds(gram, a);
    Rat cut = T - bounds.min_tail[0];
    InvPochCache invp(cut);
    MultiSeries result = MultiSeries::zero(nv, cut);
    std::vector<long long> N(n, 0);

    auto rec = [&](auto&& self, int i, const Rat& energy,
                   const MultiSeries& acc) -> void {
        if (i == n) {
            result = result + acc;
            return;
        }
        Rat cross = 0;
        for (int j = 0; j < i; ++j) cross += gram[j][i] * N[j];
        for (long long m = 0;; ++m) {
            Rat de = gram[i][i] * m * m / 2 + (cross - a[i]) * m;
            if (energy + de + bounds.min_tail[i + 1] >= cut) {
                if (m >= bounds.vertex[i]) break;
                continue;
            }
            N[i] = m;
            std::vector<Rat> zshift(nv);
            for (int v = 0; v < nv; ++v) zshift[v] = zw[v][i] * m;
            Rat coeff = (alternating && (m & 1)) ? Rat(-1) : Rat(1);
            MultiSeries term = acc * MultiSeries::monomial(nv, coeff, de, zshift) *
                               MultiSeries::lift(nv, invp.get(m));
            self(self, i + 1, energy + de, term.truncated(cut));
        }
        N[i] = 0;
    };
    rec(rec, 0, 0, MultiSeries::one(nv).truncated(cut));
    return result.truncated(T);
}

namespace {

struct Species {
    std::vector<Rat> off;  // base-energy dependence on earlier occupations
    Rat start;             // lowest mode energy above the base
};

std::vector<Species> family_spec(FockFamily family) {
    const Rat h = Rat(1, 2);
    switch (family) {
        case FockFamily::Sl3Untwisted:
            return {{{}, h}, {{h}, h}, {{h, h}, h}};
        case FockFamily::Sl3Twisted:
            return {{{}, h}, {{h}, 0}, {{h, h}, 0}};
        case FockFamily::Sl4Untwisted:
            return {{{}, h},          {{h}, h},          {{0, h}, h},
                    {{h, h, h}, h},   {{h, h, h, 1}, h}, {{h, 0, h, h, h}, h}};
        case FockFamily::Sl4Sixth:
            return {{{}, h},          {{h}, 0},          {{0, h}, h},
                    {{h, h, h}, 0},   {{h, h, h, 1}, 0}, {{h, 0, h, h, h}, 0}};
        case FockFamily::Sl4Eighth:
            return {{{}, 0},          {{h}, 0},          {{0, h}, h},
                    {{h, h, h}, h},   {{h, h, h, 1}, 0}, {{h, 0, h, h, h}, h}};
    }
    throw std::logic_error("fock_basis_count: unknown family");
}

}  // namespace

QSeries fock_basis_count(FockFamily family, const Rat& T) {
    std::vector<Species> spec = family_spec(family);
    int n = (int)spec.size();

    // Partition counts: ptab[m][e] = number of partitions of e into at most
    // m parts; these tally the excitations above a minimal mode filling.
    long long emax = std::max<long long>(0, rat_ceil(T));
    std::vector<std::vector<Int>> ptab;
    ptab.push_back(std::vector<Int>(emax + 1, 0));
    ptab[0][0] = 1;
    auto ptab_row = [&](long long m) -> const std::vector<Int>& {
        while ((long long)ptab.size() <= m) {
            long long k = (long long)ptab.size();
            std::vector<Int> row = ptab[k - 1];
            for (long long e = k; e <= emax; ++e) row[e] += row[e - k];
            ptab.push_back(std::move(row));
        }
        return ptab[m];
    };

    QSeries result = QSeries::zero(T);
    std::vector<long long> N(n, 0);
    auto rec = [&](auto&& self, int i, const Rat& energy,
                   const QSeries& acc) -> void {
        if (i == n) {
            result = result + acc;
            return;
        }
        Rat base = spec[i].start;
        for (int j = 0; j < (int)spec[i].off.size(); ++j)
            base += spec[i].off[j] * N[j];
        for (long long m = 0;; ++m) {
            // minimal filling: modes base, base+1, ..., base+m-1
            Rat de = 0;
            for (long long j = 0; j < m; ++j) de += base + j;
            if (energy + de >= T) break;
            N[i] = m;
            const std::vector<Int>& row = ptab_row(m);
            QSeries part = QSeries::zero(T - energy - de);
            for (long long e = 0; e <= emax && e < T - energy - de; ++e)
                if (row[e] != 0)
                    part = part + QSeries::monomial(Rat(row[e]), e);
            self(self, i + 1, energy + de,
                 (acc.shifted(de) * part).truncated(T));
        }
        N[i] = 0;
    };
    rec(rec, 0, 0, QSeries::one().truncated(T));
    return result.truncated(T);
}

double dilog_central_charge(const std::vector<std::vector<double>>& gram) {
    int n = (int)gram.size();
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = std::log(0.5);
    for (int iter = 0; iter < 100000; ++iter) {
        double delta = 0;
        std::vector<double> nx(n);
        for (int i = 0; i < n; ++i) {
            double s = 0;
            for (int j = 0; j < n; ++j)
                s += gram[i][j] * std::log(1.0 - std::exp(x[j]));
            nx[i] = 0.5 * x[i] + 0.5 * s;
            delta = std::max(delta, std::fabs(nx[i] - x[i]));
        }
        x = nx;
        if (delta < 1e-15) break;
    }
    auto dilog = [](double t) {
        // Li2 by the defining power series after Landen-type reduction
        // Li2(t) = pi^2/6 - ln(t)ln(1-t) - Li2(1-t) keeps the series argument
        // small enough to converge quickly.
        double pre = 0, sgn = 1;
        if (t > 0.5) {
            double pi2over6 = 1.6449340668482264;
            pre = pi2over6 - std::log(t) * std::log(1 - t);
            sgn = -1;
            t = 1 - t;
        }
        double sum = 0, p = t;
        for (int k = 1; k < 200; ++k) {
            sum += p / (double(k) * k);
            p *= t;
            if (p < 1e-18) break;
        }
        return pre + sgn * sum;
    };
    double c = 0;
    for (int i = 0; i < n; ++i) {
        double xi = std::exp(x[i]);
        c += dilog(xi) + 0.5 * std::log(xi) * std::log(1.0 - xi);
    }
    return c * 6.0 / (M_PI * M_PI);
}

}  // namespace qchar
