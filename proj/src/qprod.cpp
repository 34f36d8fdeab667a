#include "qbc/qprod.hpp"

#include <algorithm>

#include "qbc/errors.hpp"

namespace qbc {

void PochProduct::mul_mono(const Rational& c, long e2) {
    mono_c_ *= c;
    mono_e_ += e2;
}

void PochProduct::mul_finite(const Rational& c, long e2, long m, int side) {
    if (m >= 0) {
        for (long j = 0; j < m; ++j) elem_[{c, e2 + 2 * j}] += side;
    } else {
        // (a; q)_m = 1/(a q^m; q)_{-m}
        for (long j = 0; j < -m; ++j) elem_[{c, e2 + 2 * (m + j)}] -= side;
    }
}

void PochProduct::mul_inf(const Rational& c, long e2, int side) {
    if (is_zero(c)) return;  // (0; q)_inf = 1
    long parity = ((e2 % 2) + 2) % 2;
    inf_[GroupKey{c, parity}][e2] += side;
}

void PochProduct::mul_poch_lambda(const Rational& c, long e2, long k,
                                  const std::vector<int>& parts, int side) {
    // part i (1-based) contributes (c q^{e2/2} t^{1-i}; q)_{parts_i}, t = q^k
    for (size_t i = 0; i < parts.size(); ++i)
        mul_finite(c, e2 - 2 * k * static_cast<long>(i), parts[i], side);
}

namespace {

struct Normalized {
    bool zero = false;
    Rational coeff{1};
    long e = 0;
    // positive-exponent binomial factors (1 - c sqrtq^e)^mult
    std::vector<std::pair<std::pair<Rational, long>, long>> elem;
    // leftover infinite tails (c, first positive exponent, net multiplicity)
    std::vector<std::tuple<Rational, long, long>> infs;
};

}  // namespace

Series PochProduct::evaluate() const {
    Normalized n;
    n.coeff = mono_c_;
    n.e = mono_e_;

    std::map<std::pair<Rational, long>, long> elem = elem_;
    for (const auto& [key, args] : inf_) {
        const Rational& c = key.c;
        long net = 0;
        for (auto it = args.begin(); it != args.end(); ++it) {
            net += it->second;
            auto next = std::next(it);
            long seg_end = (next == args.end()) ? it->first : next->first;
            long running = 0;
            for (auto jt = args.begin(); jt != std::next(it); ++jt)
                running += jt->second;
            if (running != 0)
                for (long x = it->first; x < seg_end; x += 2)
                    elem[{c, x}] += running;
        }
        if (net != 0) {
            long start = args.rbegin()->first;
            while (start <= 0) {
                elem[{c, start}] += net;
                start += 2;
            }
            n.infs.emplace_back(c, start, net);
        }
    }

    for (const auto& [ce, mult] : elem) {
        if (mult == 0) continue;
        const auto& [c, e] = ce;
        if (e == 0) {
            Rational f = Rational(1) - c;
            if (is_zero(f)) {
                if (mult < 0)
                    throw PoleError("(1 - q^0) in a denominator");
                n.zero = true;
            } else {
                n.coeff *= rat_pow(f, mult);
            }
        } else if (e < 0) {
            // (1 - c q^e)^m = (-c)^m q^{em} (1 - c^{-1} q^{-e})^m
            n.coeff *= rat_pow(-c, mult);
            n.e += e * mult;
            n.elem.emplace_back(std::make_pair(Rational(1) / c, -e), mult);
        } else {
            n.elem.emplace_back(ce, mult);
        }
    }
    if (n.zero) return Series::zero(Var::SqrtQ, order2_);

    long wl = static_cast<long>(order2_) - n.e;
    if (wl < 0) return Series::zero(Var::SqrtQ, order2_);
    int w = static_cast<int>(wl);

    Series num = Series::constant(Var::SqrtQ, Rational(1), w);
    Series den = num;
    auto apply = [&](const Rational& c, long e, long mult) {
        if (e > wl) return;
        Series& target = mult > 0 ? num : den;
        for (long r = 0; r < std::abs(mult); ++r)
            target = target.times_binomial(c, e);
    };
    for (const auto& [ce, mult] : n.elem) apply(ce.first, ce.second, mult);
    for (const auto& [c, start, net] : n.infs)
        for (long x = start; x <= wl; x += 2) apply(c, x, net);

    Series res = num * den.inverse();
    return res.shifted(n.e).scaled(n.coeff).truncated(order2_);
}

long PochProduct::min_exp_bound() const {
    long e = mono_e_;
    std::map<std::pair<Rational, long>, long> elem = elem_;
    for (const auto& [key, args] : inf_) {
        long running = 0;
        for (auto it = args.begin(); it != args.end(); ++it) {
            running += it->second;
            auto next = std::next(it);
            if (next == args.end()) break;
            if (running != 0)
                for (long x = it->first; x < next->first; x += 2)
                    elem[{key.c, x}] += running;
        }
        long net = running;
        if (net != 0) {
            long start = args.rbegin()->first;
            while (start <= 0) {
                elem[{key.c, start}] += net;
                start += 2;
            }
        }
    }
    for (const auto& [ce, mult] : elem) {
        if (mult == 0) continue;
        const auto& [c, x] = ce;
        if (x == 0 && c == 1 && mult > 0) return order2_ + 1;  // exact zero
        if (x < 0) e += x * mult;
    }
    return e;
}

}  // namespace qbc
