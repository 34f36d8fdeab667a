#pragma once

#include "qbc/partition.hpp"
#include "qbc/scalar.hpp"

namespace qbc {

/// (a; q)_m = prod_{i=0}^{m-1} (1 - a q^i); negative index via
/// (a; q)_m = 1/(a q^m; q)_{-m}.  Ring-generic (rational, series, float);
/// a and q must share a ring.  Throws PoleError when a reciprocal factor
/// vanishes.
Scalar qpoch(const Scalar& a, const Scalar& q, long m);

/// (c sqrtq^e2; sqrtq^step2)_inf truncated to sqrtq-order `order2`.
/// Requires e2 > 0 (all factor exponents positive) and step2 > 0.
Series qpoch_inf(const Rational& c, long e2, long step2, int order2);

/// theta(z; base) = (z; base)_inf (base/z; base)_inf for z = c sqrtq^e2 and
/// base = sqrtq^base2, truncated to sqrtq-order `order2`.  Arbitrary e2 is
/// reduced into range with the quasi-periodicity law
/// theta(base*z) = -z^{-1} theta(z), which contributes an exact monomial
/// prefactor (the result is a Laurent series when e2 lies far out of range).
Series theta_q(const Rational& c, long e2, long base2, int order2);

/// theta(x; p) = (x; p)_inf (p/x; p)_inf as a truncated series in P.
/// x must be rational or a monomial in P (c p^j, any integer j; reduced via
/// quasi-periodicity).  theta(1) is the exact zero series.
Series theta_p_series(const Scalar& x, int p_order);

/// Elliptic factorial (a; q, p)_m = prod_{k=0}^{m-1} theta(a q^k; p),
/// negative m via the same reciprocal flip as qpoch.  a, q rational or
/// P-monomial scalars; result is a Series-in-P scalar.
Scalar epoch(const Scalar& a, const Scalar& q, long m, int p_order);

/// Pochhammer evaluation context: selects the trigonometric (p = 0) or
/// elliptic (theta-product) flavor so the W-function layer can be written
/// once for both.
struct PochCtx {
    bool elliptic = false;
    int p_order = 0;

    /// (a; q)_m or (a; q, p)_m per flavor.
    Scalar poch(const Scalar& a, const Scalar& q, long m) const;
    /// theta(x; p), or its p = 0 limit (1 - x).
    Scalar theta(const Scalar& x) const;
    /// (a; q, p, t)_lambda = prod_i (a t^{1-i}; q, p)_{lambda_i}.
    Scalar poch_partition(const Scalar& a, const Scalar& q, const Scalar& t,
                          const Partition& lam) const;
    /// 1 in the ring of x (matching tag and, for series, variable/order).
    Scalar one_like(const Scalar& x) const;
};

/// Infinite product (a; q)_inf for |q| < 1 in the float ring, with the tail
/// cut off once factors are within 1e-18 of 1.
Cplx qpoch_inf_f(Cplx a, Cplx q);

/// (a; q)_alpha = (a; q)_inf / (a q^alpha; q)_inf for arbitrary complex
/// alpha (float-only definition of non-integer Pochhammer indices).
Cplx qpoch_frac_f(Cplx a, Cplx q, Cplx alpha);

}  // namespace qbc
