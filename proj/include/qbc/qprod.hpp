#pragma once

#include <map>
#include <vector>

#include "qbc/partition.hpp"
#include "qbc/series.hpp"

namespace qbc {

/// Formal product of q-monomials and finite/infinite q-Pochhammer symbols
/// with q-monomial arguments, evaluated as a truncated Laurent series in
/// sqrtq.
///
/// Infinite Pochhammers with arguments on the same coefficient/parity class
/// are telescoped against each other symbolically before any expansion, so
/// ratios like (q^{1-j}; q)_inf / (q^{-j}; q)_inf collapse to finite factor
/// lists even when individual factors vanish or have negative exponents.
/// A vanishing factor that survives cancellation makes the whole product
/// exactly zero (numerator) or raises PoleError (denominator).
///
/// Factors with negative exponents are rewritten through
/// 1 - c q^e = (-c q^e)(1 - c^{-1} q^{-e}), keeping everything a unit times
/// a power series.  The accumulated monomial can have a negative exponent,
/// so the result is in general a Laurent series valid to the target order.
class PochProduct {
public:
    explicit PochProduct(int order2) : order2_(order2) {}

    /// Multiply by the monomial c * sqrtq^e2.
    void mul_mono(const Rational& c, long e2);

    /// Multiply by (c sqrtq^e2; q)_m^side (side +1 or -1; m may be negative).
    void mul_finite(const Rational& c, long e2, long m, int side = 1);

    /// Multiply by (c sqrtq^e2; q)_inf^side.
    void mul_inf(const Rational& c, long e2, int side = 1);

    /// Multiply by (c sqrtq^e2; q, q^k)_lambda^side
    ///   = prod_i (c sqrtq^{e2 + 2k(1-i)}; q)_{lambda_i}^side,
    /// for partitions or signed vectors (negative parts use the
    /// negative-index Pochhammer).
    void mul_poch_lambda(const Rational& c, long e2, long k,
                         const std::vector<int>& parts, int side = 1);

    /// Evaluate to a Laurent series exact to sqrtq-order order2.
    Series evaluate() const;

    /// Lower bound for the lowest exponent of the evaluated series, from
    /// the factor bookkeeping alone (cheap; no series arithmetic).  Exact
    /// zero evaluates give no bound (returns order2 + 1).
    long min_exp_bound() const;

private:
    struct GroupKey {
        Rational c;
        long parity;  // e2 mod 2
        bool operator<(const GroupKey& o) const {
            if (parity != o.parity) return parity < o.parity;
            return c < o.c;
        }
    };

    int order2_;
    Rational mono_c_{1};
    long mono_e_ = 0;
    // infinite-Pochhammer arguments by telescoping class: exponent -> net multiplicity
    std::map<GroupKey, std::map<long, long>> inf_;
    // finite elementary binomial factors (1 - c sqrtq^e): (c, e) -> net multiplicity
    std::map<std::pair<Rational, long>, long> elem_;
};

}  // namespace qbc
