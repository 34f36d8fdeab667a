#pragma once

#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qbc/rational.hpp"

namespace qbc {

/// Series variable.  SqrtQ is a formal square root of q (q == SqrtQ^2), so
/// half-integer powers of q have integer exponents; P is the elliptic nome.
enum class Var : unsigned char { SqrtQ, P };

const char* var_name(Var v);

/// Truncated formal Laurent series over the rationals in a single variable.
///
/// Coefficients are stored densely for exponents in [min_exp, min_exp+size);
/// exponents between the stored range and `order` are known to be zero;
/// exponents above `order` are *unknown*, not zero.  A series whose value is
/// known exactly (e.g. a monomial) carries the sentinel order `kExactOrder`.
///
/// Arithmetic propagates validity: results carry order = min of the operand
/// validities, adjusted for Laurent offsets under multiplication and
/// inversion.  Reading a coefficient above `order` throws OrderError.
class Series {
public:
    static constexpr int kExactOrder = std::numeric_limits<int>::max() / 4;

    /// Zero series in SqrtQ, exactly known (for containers).
    Series() : var_(Var::SqrtQ), min_exp_(0), order_(kExactOrder) {}

    static Series zero(Var v, int order = kExactOrder);
    static Series constant(Var v, const Rational& c, int order = kExactOrder);
    static Series monomial(Var v, const Rational& c, long e,
                           int order = kExactOrder);

    Var var() const { return var_; }
    int order() const { return order_; }
    bool is_zero() const { return coeff_.empty(); }
    bool known_exactly() const { return order_ == kExactOrder; }

    /// Lowest exponent whose coefficient may be nonzero.  For a stored
    /// nonzero series this is the first stored exponent; for a (truncated)
    /// zero series everything up to `order` is zero, so it is order + 1.
    long min_exp() const;

    /// Coefficient of var^e.  Throws OrderError for e > order.
    Rational coeff(long e) const;

    /// Same value with validity capped at `order` (stored tail dropped).
    Series truncated(int order) const;

    Series operator-() const;
    Series& operator+=(const Series& o) { return *this = *this + o; }
    Series& operator-=(const Series& o) { return *this = *this - o; }
    Series& operator*=(const Series& o) { return *this = *this * o; }

    friend Series operator+(const Series& a, const Series& b);
    friend Series operator-(const Series& a, const Series& b);
    friend Series operator*(const Series& a, const Series& b);

    Series scaled(const Rational& c) const;
    Series shifted(long e) const;  // multiply by var^e

    /// Multiply by the binomial (1 - c var^e); much cheaper than a general
    /// product and the workhorse of Pochhammer evaluation.
    Series times_binomial(const Rational& c, long e) const;

    /// Multiplicative inverse.  Requires the lowest coefficient to be
    /// nonzero.  Inverting an exactly-known multi-term series needs a
    /// finite working order (see WorkingOrderGuard); the result is valid to
    /// that order.
    Series inverse() const;

    Series pow(long k) const;

    bool operator==(const Series& o) const;

    std::string to_string() const;

    /// CSV rows "exponent,numerator,denominator", one per exponent from
    /// min(0, min_exp) (or `from` if given) through `upto`, ascending.
    void dump_csv(std::ostream& os, long upto,
                  std::optional<long> from = std::nullopt) const;

private:
    Var var_;
    long min_exp_;                 // exponent of coeff_[0] (when nonempty)
    int order_;                    // validity bound (kExactOrder = exact)
    std::vector<Rational> coeff_;  // trimmed: front()/back() nonzero

    void normalize();
    friend class SeriesBuilder;
};

/// First mismatch found by series_eq.
struct EqMismatch {
    long exponent;  // in units of the series variable
    Rational lhs, rhs;
};

Series series_mul(const Series& a, const Series& b);
Series series_inv(const Series& a);

/// Compare coefficients of a and b for all exponents <= order.  Throws
/// OrderError when either side is not valid that far.  Returns the first
/// mismatch, or nullopt when equal.
std::optional<EqMismatch> series_eq(const Series& a, const Series& b,
                                    int order);

/// Truncated product of factors (1 - c var^e) pulled from `gen` until it
/// yields an exponent > order (exponents must be >= 0 and non-decreasing;
/// the result is exact to `order`).  `gen` returns nullopt to end early, in
/// which case the remaining factors are 1.
Series product_trunc(Var v, int order,
                     const std::function<std::optional<std::pair<Rational, long>>()>& gen);

/// Working order for operations on exactly-known series whose result is an
/// honest infinite series (currently: inverse of a multi-term polynomial).
/// Scoped, per-thread.
class WorkingOrderGuard {
public:
    explicit WorkingOrderGuard(int order);
    ~WorkingOrderGuard();
    WorkingOrderGuard(const WorkingOrderGuard&) = delete;
    WorkingOrderGuard& operator=(const WorkingOrderGuard&) = delete;
    static int current();  // -1 when unset

private:
    int prev_;
};

}  // namespace qbc
