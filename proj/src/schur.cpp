#include "qbc/schur.hpp"

#include <sstream>

#include "qbc/errors.hpp"
#include "qbc/rational.hpp"

namespace qbc {

void QPoly::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

QPoly QPoly::constant(long long c) { return monomial(c, 0); }

QPoly QPoly::monomial(long long c, int e) {
    if (e < 0) throw Error("QPoly::monomial: negative exponent");
    QPoly p;
    if (c != 0) {
        p.c_.assign(static_cast<std::size_t>(e) + 1, 0);
        p.c_.back() = c;
    }
    return p;
}

long long QPoly::coeff(int e) const {
    if (e < 0 || e >= static_cast<int>(c_.size())) return 0;
    return c_[static_cast<std::size_t>(e)];
}

QPoly QPoly::operator-() const {
    QPoly p = *this;
    for (auto& c : p.c_) c = -c;
    return p;
}

QPoly operator+(const QPoly& a, const QPoly& b) {
    QPoly p;
    p.c_.assign(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < p.c_.size(); ++i)
        p.c_[i] = (i < a.c_.size() ? a.c_[i] : 0) + (i < b.c_.size() ? b.c_[i] : 0);
    p.normalize();
    return p;
}

QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }

QPoly operator*(const QPoly& a, const QPoly& b) {
    QPoly p;
    if (a.is_zero() || b.is_zero()) return p;
    p.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            p.c_[i + j] += a.c_[i] * b.c_[j];
    }
    p.normalize();
    return p;
}

QPoly QPoly::shifted(int e) const {
    QPoly p;
    if (is_zero()) return p;
    if (e >= 0) {
        p.c_.assign(c_.size() + static_cast<std::size_t>(e), 0);
        for (std::size_t i = 0; i < c_.size(); ++i) p.c_[i + e] = c_[i];
        return p;
    }
    int down = -e;
    if (static_cast<int>(c_.size()) <= down)
        throw Error("QPoly::shifted: quotient is not a polynomial");
    for (int i = 0; i < down; ++i)
        if (c_[static_cast<std::size_t>(i)] != 0)
            throw Error("QPoly::shifted: quotient is not a polynomial");
    p.c_.assign(c_.begin() + down, c_.end());
    p.normalize();
    return p;
}

Series QPoly::to_series() const {
    Series s = Series::zero(Var::SqrtQ);
    for (std::size_t e = 0; e < c_.size(); ++e)
        if (c_[e] != 0)
            s += Series::monomial(Var::SqrtQ, Rational(static_cast<long>(c_[e])),
                                  2 * static_cast<long>(e));
    return s;
}

std::string QPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t e = 0; e < c_.size(); ++e) {
        long long c = c_[e];
        if (c == 0) continue;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        long long a = c > 0 ? c : -c;
        if (a != 1 || e == 0) os << a;
        if (e > 0) {
            if (a != 1) os << "*";
            os << "q";
            if (e > 1) os << "^" << e;
        }
    }
    return os.str();
}

namespace {

/// Shared three-term ladder: given F_0 and F_1, walk F_d = F_{d-1} +
/// q^d F_{d-2} up to positive d, or invert it (F_{d-2} = (F_d - F_{d-1}) /
/// q^d) down to negative d.
QPoly schur_ladder(int d, const QPoly& f0, const QPoly& f1) {
    if (d >= 0) {
        QPoly prev = f0, cur = f1;  // F_{k-1}, F_k with k starting at 1
        if (d == 0) return f0;
        for (int k = 1; k < d; ++k) {
            QPoly next = cur + QPoly::monomial(1, k + 1) * prev;
            prev = cur;
            cur = next;
        }
        return cur;
    }
    QPoly above = f1, top = f0;  // F_{k+2}, F_{k+1} with k starting at -1
    QPoly cur;
    for (int k = -1; k >= d; --k) {
        cur = (above - top).shifted(-(k + 2));
        above = top;
        top = cur;
    }
    return cur;
}

}  // namespace

QPoly schur_D(int d) {
    return schur_ladder(d, QPoly::constant(1),
                        QPoly::constant(1) + QPoly::monomial(1, 1));
}

QPoly schur_E(int d) {
    return schur_ladder(d, QPoly::constant(1), QPoly::constant(1));
}

QPoly qbinom(int n, int m) {
    if (m < 0 || n < 0 || m > n) return QPoly();
    // q-Pascal column: row k holds [k, j]_q for all j, built with
    // [k, j] = [k-1, j-1] + q^j [k-1, j].
    std::vector<QPoly> row(1, QPoly::constant(1));
    for (int k = 1; k <= n; ++k) {
        std::vector<QPoly> next(static_cast<std::size_t>(k) + 1);
        for (int j = 0; j <= k; ++j) {
            QPoly v;
            if (j > 0) v += row[static_cast<std::size_t>(j - 1)];
            if (j < k)
                v += QPoly::monomial(1, j) * row[static_cast<std::size_t>(j)];
            next[static_cast<std::size_t>(j)] = v;
        }
        row = std::move(next);
    }
    return row[static_cast<std::size_t>(m)];
}

XPoly xpoly_mul(const XPoly& a, const XPoly& b) {
    if (a.empty() || b.empty()) return {};
    XPoly p(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            p[i + j] += a[i] * b[j];
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    return p;
}

XPoly f_delta(int d) {
    if (d < 0) throw Error("f_delta: negative index");
    if (d == 0) return {QPoly::constant(1), QPoly::constant(1)};
    // (1 - x^2 q^d)
    XPoly f = {QPoly::constant(1), QPoly(), -QPoly::monomial(1, d)};
    for (int r = 1; r < d; ++r)
        f = xpoly_mul(f, {QPoly::constant(1), -QPoly::monomial(1, r)});
    return f;
}

}  // namespace qbc
