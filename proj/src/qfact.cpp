#include "qbc/qfact.hpp"

#include <cmath>
#include <optional>

#include "qbc/errors.hpp"

namespace qbc {

namespace {

Scalar one_in_ring_of(const Scalar& x) {
    if (x.is_rational()) return Scalar(Rational(1));
    if (x.is_series())
        return Scalar(Series::constant(x.series().var(), Rational(1)));
    return Scalar(Cplx(1.0));
}

/// Monomial view of a scalar: (c, e) with value c * var^e.  Rationals are
/// monomials with e = 0; general series are not monomials.
std::optional<std::pair<Rational, long>> as_monomial(const Scalar& x) {
    if (x.is_rational()) return std::make_pair(x.rational(), 0L);
    if (!x.is_series()) return std::nullopt;
    const Series& s = x.series();
    if (s.is_zero()) return std::nullopt;
    long lo = s.min_exp();
    // a monomial equals the series rebuilt from its leading term alone
    Series probe = Series::monomial(s.var(), s.coeff(lo), lo, s.order());
    if (!(probe == s)) return std::nullopt;
    return std::make_pair(s.coeff(lo), lo);
}

}  // namespace

Scalar qpoch(const Scalar& a, const Scalar& q, long m) {
    if (m == 0) return one_in_ring_of(a);
    if (m < 0) {
        // (a; q)_m = 1 / (a q^m; q)_{-m}
        Scalar denom = qpoch(a * q.pow(m), q, -m);
        if (denom.is_zero())
            throw PoleError("(a q^m; q)_{-m} with a vanishing factor");
        return denom.inverse();
    }
    Scalar one = one_in_ring_of(a);
    Scalar acc = one;
    Scalar aq = a;
    for (long i = 0; i < m; ++i) {
        acc = acc * (one - aq);
        aq = aq * q;
    }
    return acc;
}

Series qpoch_inf(const Rational& c, long e2, long step2, int order2) {
    if (step2 <= 0) throw Error("qpoch_inf: step must be positive");
    if (e2 <= 0)
        throw Error("qpoch_inf: argument exponent must be positive "
                    "(non-convergent formal product)");
    Series acc = Series::constant(Var::SqrtQ, Rational(1), order2);
    for (long e = e2; e <= order2; e += step2) acc = acc.times_binomial(c, e);
    return acc;
}

Series theta_q(const Rational& c0, long e20, long base2, int order2) {
    if (base2 <= 0) throw Error("theta_q: base exponent must be positive");
    if (is_zero(c0)) throw Error("theta_q: zero argument");
    // Reduce z = c sqrtq^e2 into 0 < e2 <= base2 via
    // theta(base z) = -z^{-1} theta(z):  each downshift z -> z/base
    // multiplies the value by -(z/base)^{-1}.
    Rational pref_c(1);
    long pref_e = 0;
    Rational c = c0;
    long e2 = e20;
    while (e2 > base2) {
        e2 -= base2;
        // value(c q^{e2+base}) = -(c q^{e2})^{-1} value(c q^{e2})
        pref_c *= -Rational(1) / c;
        pref_e -= e2;
    }
    while (e2 <= 0) {
        // upshift: value(z) = -(z)^{-1} value(base z) read backwards:
        // value(z) with z = c q^{e2} equals -z^{-1} ... use the law in the
        // other direction: theta(z) = -z theta(base z)?  Derive:
        // theta(base w) = -w^{-1} theta(w)  =>  theta(w) = -w theta(base w).
        pref_c *= -c;
        pref_e += e2;
        e2 += base2;
    }
    // Now 0 < e2 <= base2: both arms have non-negative exponents.  The
    // monomial prefactor shifts the needed working bound for the arms.
    Series acc = Series::monomial(Var::SqrtQ, pref_c, pref_e);
    long arm_order = order2 - pref_e;
    if (arm_order < 0) return Series::zero(Var::SqrtQ, order2);
    Series arms = Series::constant(Var::SqrtQ, Rational(1),
                                   static_cast<int>(arm_order));
    for (long e = e2; e <= arm_order; e += base2)
        arms = arms.times_binomial(c, e);
    for (long e = base2 - e2; e <= arm_order; e += base2) {
        if (e == 0) {
            // constant factor (1 - 1/c); zero exactly when c == 1
            Rational f = Rational(1) - Rational(1) / c;
            if (is_zero(f)) return Series::zero(Var::SqrtQ, order2);
            arms = arms.scaled(f);
        } else {
            arms = arms.times_binomial(Rational(1) / c, e);
        }
    }
    return (acc * arms).truncated(order2);
}

Series theta_p_series(const Scalar& x, int p_order) {
    auto mono = as_monomial(x);
    if (!mono) throw Error("theta_p_series: argument must be a P-monomial");
    auto [c, j] = *mono;
    if (x.is_series() && x.series().var() != Var::P)
        throw TagError("theta_p_series: series argument must be in p");
    if (is_zero(c)) throw Error("theta_p_series: zero argument");
    // Reduce theta(c p^j) = (-1)^j c^{-j} p^{-C(j,2)} theta(c) via
    // quasi-periodicity (valid for negative j as well).
    Rational pref_c = (j % 2 == 0) ? rat_pow(c, -j) : -rat_pow(c, -j);
    long pref_e = -binom2(j);
    if (c == 1) return Series::zero(Var::P, p_order);  // theta(1) = 0
    long arm_order = p_order - pref_e;
    if (arm_order < 0) return Series::zero(Var::P, p_order);
    Series arms = Series::constant(Var::P, Rational(1),
                                   static_cast<int>(arm_order));
    for (long i = 0; i <= arm_order; ++i) arms = arms.times_binomial(c, i);
    for (long i = 1; i <= arm_order; ++i)
        arms = arms.times_binomial(Rational(1) / c, i);
    Series pref = Series::monomial(Var::P, pref_c, pref_e);
    return (pref * arms).truncated(p_order);
}

Scalar epoch(const Scalar& a, const Scalar& q, long m, int p_order) {
    if (m == 0) return Scalar(Series::constant(Var::P, Rational(1)));
    if (m < 0) {
        Scalar denom = epoch(a * q.pow(m), q, -m, p_order);
        if (denom.is_zero())
            throw PoleError("(a q^m; q, p)_{-m} with a vanishing theta factor");
        return denom.inverse();
    }
    Scalar acc(Series::constant(Var::P, Rational(1)));
    Scalar aq = a;
    for (long k = 0; k < m; ++k) {
        acc = acc * Scalar(theta_p_series(aq, p_order));
        aq = aq * q;
    }
    return acc;
}

Scalar PochCtx::poch(const Scalar& a, const Scalar& q, long m) const {
    return elliptic ? epoch(a, q, m, p_order) : qpoch(a, q, m);
}

Scalar PochCtx::theta(const Scalar& x) const {
    if (elliptic) return Scalar(theta_p_series(x, p_order));
    return one_like(x) - x;
}

Scalar PochCtx::poch_partition(const Scalar& a, const Scalar& q,
                               const Scalar& t, const Partition& lam) const {
    Scalar acc = one_like(a);
    for (int i = 1; i <= lam.num_parts(); ++i)
        acc = acc * poch(a * t.pow(1 - i), q, lam.part(i));
    return acc;
}

Scalar PochCtx::one_like(const Scalar& x) const {
    if (elliptic) return Scalar(Series::constant(Var::P, Rational(1)));
    return one_in_ring_of(x);
}

Cplx qpoch_inf_f(Cplx a, Cplx q) {
    if (std::abs(q) >= 1.0) throw Error("qpoch_inf_f: |q| must be < 1");
    Cplx acc(1.0);
    Cplx aq = a;
    for (int i = 0; i < 20000; ++i) {
        if (std::abs(aq) < 1e-18) break;
        acc *= (Cplx(1.0) - aq);
        aq *= q;
    }
    return acc;
}

Cplx qpoch_frac_f(Cplx a, Cplx q, Cplx alpha) {
    Cplx qa = std::exp(alpha * std::log(q));  // principal branch
    return qpoch_inf_f(a, q) / qpoch_inf_f(a * qa, q);
}

}  // namespace qbc
