#include "qbc/series.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "qbc/errors.hpp"

namespace qbc {

namespace {

thread_local int g_working_order = -1;

constexpr long kExactL = Series::kExactOrder;

int clamp_order(long long o) {
    if (o >= kExactL) return Series::kExactOrder;
    if (o < -kExactL) throw OrderError("order underflow");
    return static_cast<int>(o);
}

void require_same_var(const Series& a, const Series& b) {
    if (a.var() != b.var())
        throw TagError(std::string("series in ") + var_name(a.var()) + " vs " +
                       var_name(b.var()));
}

}  // namespace

const char* var_name(Var v) { return v == Var::SqrtQ ? "sqrtq" : "p"; }

WorkingOrderGuard::WorkingOrderGuard(int order) : prev_(g_working_order) {
    g_working_order = order;
}
WorkingOrderGuard::~WorkingOrderGuard() { g_working_order = prev_; }
int WorkingOrderGuard::current() { return g_working_order; }

void Series::normalize() {
    size_t lo = 0, hi = coeff_.size();
    while (lo < hi && qbc::is_zero(coeff_[lo])) ++lo;
    while (hi > lo && qbc::is_zero(coeff_[hi - 1])) --hi;
    if (lo == hi) {
        coeff_.clear();
        min_exp_ = 0;
        return;
    }
    if (lo > 0) coeff_.erase(coeff_.begin(), coeff_.begin() + lo);
    coeff_.resize(hi - lo);
    min_exp_ += static_cast<long>(lo);
    // Drop stored coefficients beyond the validity bound.
    if (order_ != kExactOrder) {
        long last = min_exp_ + static_cast<long>(coeff_.size()) - 1;
        if (min_exp_ > order_) {
            coeff_.clear();
            min_exp_ = 0;
        } else if (last > order_) {
            coeff_.resize(static_cast<size_t>(order_ - min_exp_ + 1));
            while (!coeff_.empty() && qbc::is_zero(coeff_.back())) coeff_.pop_back();
            if (coeff_.empty()) min_exp_ = 0;
        }
    }
}

Series Series::zero(Var v, int order) {
    Series s;
    s.var_ = v;
    s.order_ = order;
    return s;
}

Series Series::constant(Var v, const Rational& c, int order) {
    return monomial(v, c, 0, order);
}

Series Series::monomial(Var v, const Rational& c, long e, int order) {
    Series s;
    s.var_ = v;
    s.order_ = order;
    if (!qbc::is_zero(c) && (order == kExactOrder || e <= order)) {
        s.min_exp_ = e;
        s.coeff_.push_back(c);
    }
    return s;
}

long Series::min_exp() const {
    if (coeff_.empty())
        return order_ == kExactOrder ? kExactL : static_cast<long>(order_) + 1;
    return min_exp_;
}

Rational Series::coeff(long e) const {
    if (order_ != kExactOrder && e > order_)
        throw OrderError("coefficient of exponent " + std::to_string(e) +
                         " requested beyond order " + std::to_string(order_));
    if (coeff_.empty() || e < min_exp_ ||
        e >= min_exp_ + static_cast<long>(coeff_.size()))
        return Rational(0);
    return coeff_[static_cast<size_t>(e - min_exp_)];
}

Series Series::truncated(int order) const {
    Series s = *this;
    s.order_ = std::min(order_, order);
    s.normalize();
    return s;
}

Series Series::operator-() const {
    Series s = *this;
    for (auto& c : s.coeff_) c = -c;
    return s;
}

Series operator+(const Series& a, const Series& b) {
    require_same_var(a, b);
    Series s;
    s.var_ = a.var_;
    s.order_ = std::min(a.order_, b.order_);
    if (a.coeff_.empty() && b.coeff_.empty()) {
        s.normalize();
        return s;
    }
    long lo = std::min(a.coeff_.empty() ? b.min_exp_ : a.min_exp_,
                       b.coeff_.empty() ? a.min_exp_ : b.min_exp_);
    long hi_a = a.coeff_.empty() ? lo - 1
                                 : a.min_exp_ + static_cast<long>(a.coeff_.size()) - 1;
    long hi_b = b.coeff_.empty() ? lo - 1
                                 : b.min_exp_ + static_cast<long>(b.coeff_.size()) - 1;
    long hi = std::max(hi_a, hi_b);
    s.min_exp_ = lo;
    s.coeff_.assign(static_cast<size_t>(hi - lo + 1), Rational(0));
    for (size_t i = 0; i < a.coeff_.size(); ++i)
        s.coeff_[static_cast<size_t>(a.min_exp_ - lo) + i] += a.coeff_[i];
    for (size_t i = 0; i < b.coeff_.size(); ++i)
        s.coeff_[static_cast<size_t>(b.min_exp_ - lo) + i] += b.coeff_[i];
    s.normalize();
    return s;
}

Series operator-(const Series& a, const Series& b) { return a + (-b); }

Series operator*(const Series& a, const Series& b) {
    require_same_var(a, b);
    Series s;
    s.var_ = a.var_;
    // Unknown tail of one factor meets the lowest term of the other.
    long long oa = (a.order_ == Series::kExactOrder)
                       ? kExactL
                       : static_cast<long long>(a.order_) + b.min_exp();
    long long ob = (b.order_ == Series::kExactOrder)
                       ? kExactL
                       : static_cast<long long>(b.order_) + a.min_exp();
    s.order_ = clamp_order(std::min(oa, ob));
    if (a.coeff_.empty() || b.coeff_.empty()) {
        s.normalize();
        return s;
    }
    s.min_exp_ = a.min_exp_ + b.min_exp_;
    s.coeff_.assign(a.coeff_.size() + b.coeff_.size() - 1, Rational(0));
    // Skip convolution entries beyond the validity bound.
    long long limit = (s.order_ == Series::kExactOrder)
                          ? std::numeric_limits<long long>::max()
                          : static_cast<long long>(s.order_) - s.min_exp_;
    Rational tmp;
    for (size_t i = 0; i < a.coeff_.size(); ++i) {
        if (static_cast<long long>(i) > limit) break;
        for (size_t j = 0; j < b.coeff_.size(); ++j) {
            if (static_cast<long long>(i + j) > limit) break;
            tmp = a.coeff_[i] * b.coeff_[j];
            s.coeff_[i + j] += tmp;
        }
    }
    s.normalize();
    return s;
}

Series Series::scaled(const Rational& c) const {
    if (qbc::is_zero(c)) {
        Series s = zero(var_, order_);
        return s;
    }
    Series s = *this;
    for (auto& x : s.coeff_) x *= c;
    return s;
}

Series Series::shifted(long e) const {
    Series s = *this;
    s.min_exp_ += e;
    if (s.order_ != kExactOrder) s.order_ = clamp_order(static_cast<long long>(s.order_) + e);
    return s;
}

Series Series::times_binomial(const Rational& c, long e) const {
    // (1 - c var^e) * this  ==  this - c * shifted(this, e)
    return *this - this->shifted(e).scaled(c);
}

Series Series::inverse() const {
    if (coeff_.empty()) throw PoleError("inverse of zero series");
    long m = min_exp_;
    const Rational& lead = coeff_.front();
    if (coeff_.size() == 1) {
        // Exact monomial: exact inverse.
        Series s = monomial(var_, Rational(1) / lead, -m, kExactOrder);
        if (order_ != kExactOrder)
            s.order_ = clamp_order(static_cast<long long>(order_) - 2 * m);
        return s;
    }
    int rel_order;  // how many correct coefficients past the lead we produce
    int out_order;
    if (order_ == kExactOrder) {
        int w = WorkingOrderGuard::current();
        if (w < 0)
            throw OrderError(
                "inverting an exactly-known multi-term series requires a "
                "working order (WorkingOrderGuard)");
        out_order = clamp_order(static_cast<long long>(w));
        rel_order = clamp_order(static_cast<long long>(w) + m);
        if (rel_order < 0) rel_order = 0;
    } else {
        rel_order = clamp_order(static_cast<long long>(order_) - m);
        out_order = clamp_order(static_cast<long long>(order_) - 2 * m);
    }
    // Invert u = this / (lead var^m)   (u = 1 + higher terms),
    // then divide by lead var^m.
    std::vector<Rational> u(coeff_.size());
    for (size_t i = 0; i < coeff_.size(); ++i) u[i] = coeff_[i] / lead;
    std::vector<Rational> inv(static_cast<size_t>(rel_order) + 1, Rational(0));
    inv[0] = 1;
    for (size_t k = 1; k < inv.size(); ++k) {
        // coefficient of var^k in u*inv must vanish
        Rational acc(0);
        size_t jmax = std::min(k, u.size() - 1);
        for (size_t j = 1; j <= jmax; ++j) acc += u[j] * inv[k - j];
        inv[k] = -acc;
    }
    Series s;
    s.var_ = var_;
    s.order_ = out_order;
    s.min_exp_ = -m;
    s.coeff_ = std::move(inv);
    for (auto& x : s.coeff_) x /= lead;
    s.normalize();
    return s;
}

Series Series::pow(long k) const {
    if (k < 0) return inverse().pow(-k);
    Series acc = constant(var_, Rational(1));
    Series base = *this;
    unsigned long e = static_cast<unsigned long>(k);
    while (e) {
        if (e & 1) acc = acc * base;
        base = (e >>= 1) ? base * base : base;
    }
    return acc;
}

bool Series::operator==(const Series& o) const {
    return var_ == o.var_ && min_exp_ == o.min_exp_ && order_ == o.order_ &&
           coeff_ == o.coeff_;
}

std::string Series::to_string() const {
    std::ostringstream os;
    if (coeff_.empty()) {
        os << "0";
    } else {
        for (size_t i = 0; i < coeff_.size(); ++i) {
            if (qbc::is_zero(coeff_[i])) continue;
            long e = min_exp_ + static_cast<long>(i);
            if (os.tellp() > 0) os << " + ";
            os << qbc::to_string(coeff_[i]);
            if (e != 0) os << "*" << var_name(var_) << "^" << e;
        }
    }
    if (order_ != kExactOrder) os << " + O(" << var_name(var_) << "^" << (order_ + 1) << ")";
    return os.str();
}

void Series::dump_csv(std::ostream& os, long upto,
                      std::optional<long> from) const {
    long lo = from.value_or(std::min(0L, coeff_.empty() ? 0L : min_exp_));
    for (long e = lo; e <= upto; ++e) {
        Rational c = coeff(e);
        os << e << "," << c.get_num().get_str() << "," << c.get_den().get_str()
           << "\n";
    }
}

Series series_mul(const Series& a, const Series& b) { return a * b; }
Series series_inv(const Series& a) { return a.inverse(); }

std::optional<EqMismatch> series_eq(const Series& a, const Series& b,
                                    int order) {
    if (a.var() != b.var())
        throw TagError(std::string("series in ") + var_name(a.var()) + " vs " +
                       var_name(b.var()));
    if (a.order() < order || b.order() < order)
        throw OrderError("comparison to order " + std::to_string(order) +
                         " exceeds validity (" + std::to_string(a.order()) +
                         ", " + std::to_string(b.order()) + ")");
    long lo = std::min(a.min_exp(), b.min_exp());
    for (long e = lo; e <= order; ++e) {
        Rational ca = a.coeff(e), cb = b.coeff(e);
        if (ca != cb) return EqMismatch{e, ca, cb};
    }
    return std::nullopt;
}

Series product_trunc(
    Var v, int order,
    const std::function<std::optional<std::pair<Rational, long>>()>& gen) {
    Series acc = Series::constant(v, Rational(1), order);
    long prev = 0;
    while (auto f = gen()) {
        auto [c, e] = *f;
        if (e < 0) throw Error("product_trunc: negative exponent factor");
        if (e < prev) throw Error("product_trunc: exponents must be non-decreasing");
        prev = e;
        if (e > order) break;
        acc = acc.times_binomial(c, e);
    }
    return acc;
}

}  // namespace qbc
