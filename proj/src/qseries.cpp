#include "qchar/qseries.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace qchar {

namespace {

long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }

long long lcm_ll(long long a, long long b) { return a / std::gcd(a, b) * b; }

// Number of lattice points j in [0, B) for rational B: j < B  <=>  j <= ceil(B)-1.
long long lattice_count(const Rat& B) { return std::max<long long>(0, rat_ceil(B)); }

std::optional<Rat> opt_min(const std::optional<Rat>& a, const std::optional<Rat>& b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}

} // namespace

// ---------------------------------------------------------------------------
// QSeries
// ---------------------------------------------------------------------------

void QSeries::normalize() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        bool dead = (it->second == 0) ||
                    (!infinite_ && Rat(it->first) >= cut_ * den_);
        it = dead ? terms_.erase(it) : std::next(it);
    }
    long long g = den_;
    for (const auto& [k, c] : terms_) g = gcd_ll(g, std::llabs(k));
    if (terms_.empty()) g = den_;
    if (g > 1) {
        std::map<long long, Rat> re;
        for (auto& [k, c] : terms_) re.emplace(k / g, std::move(c));
        terms_ = std::move(re);
        den_ /= g;
    }
}

long long QSeries::align(QSeries& a, QSeries& b) {
    long long L = lcm_ll(a.den_, b.den_);
    for (QSeries* s : {&a, &b}) {
        if (s->den_ == L) continue;
        long long f = L / s->den_;
        std::map<long long, Rat> re;
        for (auto& [k, c] : s->terms_) re.emplace(k * f, std::move(c));
        s->terms_ = std::move(re);
        s->den_ = L;
    }
    return L;
}

QSeries QSeries::zero(const Rat& cut) {
    QSeries s;
    s.infinite_ = false;
    s.cut_ = cut;
    return s;
}

QSeries QSeries::zero_exact() { return QSeries(); }

QSeries QSeries::monomial(const Rat& coeff, const Rat& exp) {
    QSeries s;
    if (coeff != 0) {
        s.den_ = denominator(exp).convert_to<long long>();
        s.terms_[numerator(exp).convert_to<long long>()] = coeff;
    }
    return s;
}

std::optional<Rat> QSeries::ord() const {
    if (terms_.empty()) return std::nullopt;
    return Rat(terms_.begin()->first, den_);
}

Rat QSeries::coeff(const Rat& e) const {
    if (!infinite_ && e >= cut_)
        throw std::domain_error("QSeries::coeff: exponent beyond truncation");
    Rat key = e * den_;
    if (denominator(key) != 1) return 0;
    auto it = terms_.find(rat_to_int(key));
    return it == terms_.end() ? Rat(0) : it->second;
}

std::vector<std::pair<Rat, Rat>> QSeries::terms() const {
    std::vector<std::pair<Rat, Rat>> out;
    out.reserve(terms_.size());
    for (const auto& [k, c] : terms_) out.emplace_back(Rat(k, den_), c);
    return out;
}

QSeries QSeries::operator-() const {
    QSeries r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
}

QSeries QSeries::operator+(const QSeries& o) const {
    QSeries a = *this, b = o;
    align(a, b);
    for (auto& [k, c] : b.terms_) {
        auto [it, fresh] = a.terms_.try_emplace(k, c);
        if (!fresh) it->second += c;
    }
    if (!b.infinite_) {
        a.cut_ = a.infinite_ ? b.cut_ : std::min(a.cut_, b.cut_);
        a.infinite_ = false;
    }
    a.normalize();
    return a;
}

QSeries QSeries::operator-(const QSeries& o) const { return *this + (-o); }

QSeries QSeries::operator*(const QSeries& o) const {
    QSeries a = *this, b = o;
    long long L = align(a, b);

    // Lower bound for ord: actual ord if terms exist, else the cut
    // (nullopt meaning +infinity for an exact zero).
    auto ord_lb = [](const QSeries& s) -> std::optional<Rat> {
        if (!s.terms_.empty()) return Rat(s.terms_.begin()->first, s.den_);
        if (!s.infinite_) return s.cut_;
        return std::nullopt; // exact zero
    };
    std::optional<Rat> cut;
    if (!a.infinite_) {
        auto ob = ord_lb(b);
        if (ob) cut = a.cut_ + *ob; // else b is exact zero; product exact zero
        else { QSeries z; z.den_ = 1; return z; }
    }
    if (!b.infinite_) {
        auto oa = ord_lb(a);
        if (oa) cut = opt_min(cut, b.cut_ + *oa);
        else { QSeries z; z.den_ = 1; return z; }
    }

    QSeries r;
    r.den_ = L;
    r.infinite_ = !cut.has_value();
    if (cut) r.cut_ = *cut;
    std::optional<Rat> cutL;
    if (cut) cutL = *cut * L;
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            long long k = ka + kb;
            if (cutL && Rat(k) >= *cutL) continue;
            auto [it, fresh] = r.terms_.try_emplace(k, 0);
            it->second += ca * cb;
            (void)fresh;
        }
    }
    r.normalize();
    return r;
}

QSeries QSeries::scaled(const Rat& c) const {
    QSeries r = *this;
    if (c == 0) { r.terms_.clear(); return r; }
    for (auto& [k, v] : r.terms_) v *= c;
    return r;
}

QSeries QSeries::shifted(const Rat& r) const {
    QSeries s = *this * monomial(1, r);
    return s;
}

QSeries QSeries::scale_exponents(const Rat& m) const {
    if (m <= 0) throw std::invalid_argument("scale_exponents: need m > 0");
    QSeries r;
    long long p = numerator(m).convert_to<long long>();
    long long q = denominator(m).convert_to<long long>();
    r.den_ = den_ * q;
    r.infinite_ = infinite_;
    if (!infinite_) r.cut_ = cut_ * m;
    for (const auto& [k, c] : terms_) r.terms_[k * p] = c;
    r.normalize();
    return r;
}

QSeries QSeries::inverse() const {
    if (terms_.empty())
        throw std::domain_error("QSeries::inverse: no leading term stored");
    if (infinite_) {
        if (terms_.size() == 1) {
            auto [k, c] = *terms_.begin();
            return monomial(Rat(1) / c, Rat(-k, den_));
        }
        throw std::domain_error(
            "QSeries::inverse: exact multi-term series; truncate first");
    }
    long long L = den_;
    long long m = terms_.begin()->first;
    Rat c0 = terms_.begin()->second;

    // w = (series / leading term); w_0 = 1, exact for steps j < L*cut - m.
    Rat bound = cut_ * L - m;
    long long count = lattice_count(bound);
    std::vector<std::pair<long long, Rat>> w; // sparse tail, j >= 1
    for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
        w.emplace_back(it->first - m, it->second / c0);

    std::vector<Rat> v(std::max<long long>(count, 1), Rat(0));
    v[0] = 1;
    for (long long n = 1; n < count; ++n) {
        Rat acc = 0;
        for (const auto& [j, wj] : w) {
            if (j > n) break;
            acc -= wj * v[n - j];
        }
        v[n] = acc;
    }

    QSeries r;
    r.den_ = L;
    r.infinite_ = false;
    r.cut_ = cut_ - 2 * Rat(m, L);
    Rat inv_c0 = Rat(1) / c0;
    for (long long n = 0; n < count; ++n)
        if (v[n] != 0) r.terms_[n - m] = v[n] * inv_c0;
    r.normalize();
    return r;
}

QSeries QSeries::pow(long long e) const {
    if (e < 0) return inverse().pow(-e);
    QSeries acc = one(), base = *this;
    // Seed the truncation: x^0 must still remember this series' cut when
    // e == 0 is an intermediate of a truncated computation; harmless
    // otherwise because `one()` is exact.
    while (e > 0) {
        if (e & 1) acc = acc * base;
        if (e >>= 1) base = base * base;
    }
    return acc;
}

QSeries QSeries::truncated(const Rat& T) const {
    QSeries r = *this;
    r.cut_ = r.infinite_ ? T : std::min(r.cut_, T);
    r.infinite_ = false;
    r.normalize();
    return r;
}

std::optional<Rat> QSeries::first_mismatch(const QSeries& o, const Rat& T) const {
    QSeries a = *this, b = o;
    long long L = align(a, b);
    Rat bound = T;
    if (!a.infinite_) bound = std::min(bound, a.cut_);
    if (!b.infinite_) bound = std::min(bound, b.cut_);
    Rat boundL = bound * L;
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    while (ia != a.terms_.end() || ib != b.terms_.end()) {
        long long ka = ia != a.terms_.end() ? ia->first : std::numeric_limits<long long>::max();
        long long kb = ib != b.terms_.end() ? ib->first : std::numeric_limits<long long>::max();
        long long k = std::min(ka, kb);
        if (Rat(k) >= boundL) break;
        Rat ca = ka == k ? (ia++)->second : Rat(0);
        Rat cb = kb == k ? (ib++)->second : Rat(0);
        if (ca != cb) return Rat(k, L);
    }
    return std::nullopt;
}

std::string QSeries::str(size_t max_terms) const {
    std::ostringstream os;
    size_t shown = 0;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (max_terms && shown >= max_terms) { os << " + ..."; break; }
        Rat e(k, den_);
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        Rat ac = abs(c);
        if (e == 0) os << ac;
        else {
            if (ac != 1) os << ac << "*";
            os << "q";
            if (e != 1) os << "^(" << e << ")";
        }
        first = false;
        ++shown;
    }
    if (first) os << "0";
    if (!infinite_) os << " + O(q^(" << cut_ << "))";
    return os.str();
}

// ---------------------------------------------------------------------------
// MultiSeries
// ---------------------------------------------------------------------------

void MultiSeries::normalize() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (!infinite_ && Rat(it->first) >= cut_ * qden_) {
            it = terms_.erase(it);
            continue;
        }
        auto& zmap = it->second;
        for (auto jt = zmap.begin(); jt != zmap.end();)
            jt = (jt->second == 0) ? zmap.erase(jt) : std::next(jt);
        it = zmap.empty() ? terms_.erase(it) : std::next(it);
    }
    long long g = qden_;
    for (const auto& [k, zm] : terms_) g = gcd_ll(g, std::llabs(k));
    if (!terms_.empty() && g > 1) {
        std::map<long long, std::map<std::vector<long long>, Rat>> re;
        for (auto& [k, zm] : terms_) re.emplace(k / g, std::move(zm));
        terms_ = std::move(re);
        qden_ /= g;
    } else if (terms_.empty()) {
        qden_ = 1;
    }
    long long gz = zden_;
    for (const auto& [k, zm] : terms_)
        for (const auto& [zv, c] : zm)
            for (long long z : zv) gz = gcd_ll(gz, std::llabs(z));
    if (!terms_.empty() && gz > 1) {
        std::map<long long, std::map<std::vector<long long>, Rat>> re;
        for (auto& [k, zm] : terms_) {
            auto& dst = re[k];
            for (auto& [zv, c] : zm) {
                std::vector<long long> w(zv);
                for (auto& z : w) z /= gz;
                dst.emplace(std::move(w), std::move(c));
            }
        }
        terms_ = std::move(re);
        zden_ /= gz;
    } else if (terms_.empty()) {
        zden_ = 1;
    }
}

void MultiSeries::align(MultiSeries& a, MultiSeries& b) {
    if (a.nvars_ != b.nvars_)
        throw std::invalid_argument("MultiSeries: variable count mismatch");
    long long Lq = lcm_ll(a.qden_, b.qden_), Lz = lcm_ll(a.zden_, b.zden_);
    for (MultiSeries* s : {&a, &b}) {
        if (s->qden_ == Lq && s->zden_ == Lz) continue;
        long long fq = Lq / s->qden_, fz = Lz / s->zden_;
        std::map<long long, std::map<std::vector<long long>, Rat>> re;
        for (auto& [k, zm] : s->terms_) {
            auto& dst = re[k * fq];
            for (auto& [zv, c] : zm) {
                std::vector<long long> w(zv);
                for (auto& z : w) z *= fz;
                dst.emplace(std::move(w), std::move(c));
            }
        }
        s->terms_ = std::move(re);
        s->qden_ = Lq;
        s->zden_ = Lz;
    }
}

MultiSeries MultiSeries::zero(int nvars, const Rat& cut) {
    MultiSeries s(nvars);
    s.infinite_ = false;
    s.cut_ = cut;
    return s;
}

MultiSeries MultiSeries::monomial(int nvars, const Rat& coeff, const Rat& qexp,
                                  const std::vector<Rat>& zexp) {
    if ((int)zexp.size() != nvars)
        throw std::invalid_argument("MultiSeries::monomial: bad z-exponent size");
    MultiSeries s(nvars);
    if (coeff == 0) return s;
    long long Lz = 1;
    for (const auto& e : zexp) Lz = lcm_ll(Lz, denominator(e).convert_to<long long>());
    s.qden_ = denominator(qexp).convert_to<long long>();
    s.zden_ = Lz;
    std::vector<long long> zv(nvars);
    for (int i = 0; i < nvars; ++i) zv[i] = rat_to_int(zexp[i] * Lz);
    s.terms_[numerator(qexp).convert_to<long long>()][zv] = coeff;
    return s;
}

MultiSeries MultiSeries::lift(int nvars, const QSeries& s) {
    MultiSeries r(nvars);
    r.qden_ = s.den_;
    r.infinite_ = s.infinite_;
    r.cut_ = s.cut_;
    std::vector<long long> z0(nvars, 0);
    for (const auto& [k, c] : s.terms_) r.terms_[k][z0] = c;
    return r;
}

std::optional<Rat> MultiSeries::qord() const {
    if (terms_.empty()) return std::nullopt;
    return Rat(terms_.begin()->first, qden_);
}

size_t MultiSeries::term_count() const {
    size_t n = 0;
    for (const auto& [k, zm] : terms_) n += zm.size();
    return n;
}

MultiSeries MultiSeries::operator-() const {
    MultiSeries r = *this;
    for (auto& [k, zm] : r.terms_)
        for (auto& [zv, c] : zm) const_cast<Rat&>(c) = -c;
    return r;
}

MultiSeries MultiSeries::operator+(const MultiSeries& o) const {
    MultiSeries a = *this, b = o;
    align(a, b);
    for (auto& [k, zm] : b.terms_) {
        auto& dst = a.terms_[k];
        for (auto& [zv, c] : zm) {
            auto [it, fresh] = dst.try_emplace(zv, c);
            if (!fresh) it->second += c;
        }
    }
    if (!b.infinite_) {
        a.cut_ = a.infinite_ ? b.cut_ : std::min(a.cut_, b.cut_);
        a.infinite_ = false;
    }
    a.normalize();
    return a;
}

MultiSeries MultiSeries::operator-(const MultiSeries& o) const { return *this + (-o); }

MultiSeries MultiSeries::operator*(const MultiSeries& o) const {
    MultiSeries a = *this, b = o;
    align(a, b);

    auto ord_lb = [](const MultiSeries& s) -> std::optional<Rat> {
        if (!s.terms_.empty()) return Rat(s.terms_.begin()->first, s.qden_);
        if (!s.infinite_) return s.cut_;
        return std::nullopt;
    };
    std::optional<Rat> cut;
    if (!a.infinite_) {
        auto ob = ord_lb(b);
        if (ob) cut = a.cut_ + *ob;
        else return MultiSeries(nvars_);
    }
    if (!b.infinite_) {
        auto oa = ord_lb(a);
        if (oa) cut = opt_min(cut, b.cut_ + *oa);
        else return MultiSeries(nvars_);
    }

    MultiSeries r(nvars_);
    r.qden_ = a.qden_;
    r.zden_ = a.zden_;
    r.infinite_ = !cut.has_value();
    if (cut) r.cut_ = *cut;
    std::optional<Rat> cutL;
    if (cut) cutL = *cut * a.qden_;
    std::vector<long long> zsum(nvars_);
    for (const auto& [ka, zma] : a.terms_) {
        for (const auto& [kb, zmb] : b.terms_) {
            long long k = ka + kb;
            if (cutL && Rat(k) >= *cutL) continue;
            auto& dst = r.terms_[k];
            for (const auto& [za, ca] : zma) {
                for (const auto& [zb, cb] : zmb) {
                    for (int i = 0; i < nvars_; ++i) zsum[i] = za[i] + zb[i];
                    auto [it, fresh] = dst.try_emplace(zsum, 0);
                    it->second += ca * cb;
                    (void)fresh;
                }
            }
        }
    }
    r.normalize();
    return r;
}

MultiSeries MultiSeries::scaled(const Rat& c) const {
    MultiSeries r = *this;
    if (c == 0) { r.terms_.clear(); return r; }
    for (auto& [k, zm] : r.terms_)
        for (auto& [zv, v] : zm) const_cast<Rat&>(v) *= c;
    return r;
}

MultiSeries MultiSeries::scale_exponents(const Rat& m) const {
    if (m <= 0) throw std::invalid_argument("scale_exponents: need m > 0");
    MultiSeries r(nvars_);
    long long p = numerator(m).convert_to<long long>();
    long long q = denominator(m).convert_to<long long>();
    r.qden_ = qden_ * q;
    r.zden_ = zden_;
    r.infinite_ = infinite_;
    if (!infinite_) r.cut_ = cut_ * m;
    for (const auto& [k, zm] : terms_) r.terms_[k * p] = zm;
    r.normalize();
    return r;
}

MultiSeries MultiSeries::truncated(const Rat& T) const {
    MultiSeries r = *this;
    r.cut_ = r.infinite_ ? T : std::min(r.cut_, T);
    r.infinite_ = false;
    r.normalize();
    return r;
}

QSeries MultiSeries::coeff_z(const std::vector<Rat>& zexp) const {
    if ((int)zexp.size() != nvars_)
        throw std::invalid_argument("coeff_z: bad z-exponent size");
    QSeries out = infinite_ ? QSeries::zero_exact() : QSeries::zero(cut_);
    std::vector<long long> key(nvars_);
    for (int i = 0; i < nvars_; ++i) {
        Rat k = zexp[i] * zden_;
        if (denominator(k) != 1) return out; // not on the exponent lattice
        key[i] = rat_to_int(k);
    }
    for (const auto& [k, zm] : terms_) {
        auto it = zm.find(key);
        if (it != zm.end() && it->second != 0)
            out += QSeries::monomial(it->second, Rat(k, qden_));
    }
    return out;
}

QSeries MultiSeries::eval_z_one() const {
    QSeries out = infinite_ ? QSeries::zero_exact() : QSeries::zero(cut_);
    for (const auto& [k, zm] : terms_) {
        Rat acc = 0;
        for (const auto& [zv, c] : zm) acc += c;
        if (acc != 0) out += QSeries::monomial(acc, Rat(k, qden_));
    }
    if (!infinite_) out = out.truncated(cut_);
    return out;
}

std::vector<std::pair<std::vector<Rat>, Rat>> MultiSeries::coeff_q(const Rat& e) const {
    if (!infinite_ && e >= cut_)
        throw std::domain_error("MultiSeries::coeff_q: exponent beyond truncation");
    std::vector<std::pair<std::vector<Rat>, Rat>> out;
    Rat key = e * qden_;
    if (denominator(key) != 1) return out;
    auto it = terms_.find(rat_to_int(key));
    if (it == terms_.end()) return out;
    for (const auto& [zv, c] : it->second) {
        std::vector<Rat> ze(nvars_);
        for (int i = 0; i < nvars_; ++i) ze[i] = Rat(zv[i], zden_);
        out.emplace_back(std::move(ze), c);
    }
    return out;
}

std::optional<Rat> MultiSeries::first_mismatch(const MultiSeries& o, const Rat& T) const {
    MultiSeries a = *this, b = o;
    align(a, b);
    Rat bound = T;
    if (!a.infinite_) bound = std::min(bound, a.cut_);
    if (!b.infinite_) bound = std::min(bound, b.cut_);
    Rat boundL = bound * a.qden_;
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    while (ia != a.terms_.end() || ib != b.terms_.end()) {
        long long ka = ia != a.terms_.end() ? ia->first : std::numeric_limits<long long>::max();
        long long kb = ib != b.terms_.end() ? ib->first : std::numeric_limits<long long>::max();
        long long k = std::min(ka, kb);
        if (Rat(k) >= boundL) break;
        const std::map<std::vector<long long>, Rat> empty;
        const auto& za = ka == k ? (ia++)->second : empty;
        const auto& zb = kb == k ? (ib++)->second : empty;
        if (za != zb) return Rat(k, a.qden_);
    }
    return std::nullopt;
}

std::string MultiSeries::str(size_t max_qterms) const {
    std::ostringstream os;
    size_t shown = 0;
    for (const auto& [k, zm] : terms_) {
        if (max_qterms && shown >= max_qterms) { os << " + ..."; break; }
        if (shown) os << " + ";
        os << "q^(" << Rat(k, qden_) << ")*[";
        bool first = true;
        for (const auto& [zv, c] : zm) {
            if (!first) os << " + ";
            os << c;
            for (int i = 0; i < nvars_; ++i)
                if (zv[i] != 0) os << "*z" << (i + 1) << "^(" << Rat(zv[i], zden_) << ")";
            first = false;
        }
        os << "]";
        ++shown;
    }
    if (!shown) os << "0";
    if (!infinite_) os << " + O(q^(" << cut_ << "))";
    return os.str();
}

} // namespace qchar
