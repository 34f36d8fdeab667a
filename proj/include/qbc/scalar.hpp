#pragma once

#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "qbc/series.hpp"

namespace qbc {

using Cplx = std::complex<double>;

/// Element of one of the three coefficient rings every identity is evaluated
/// in: exact rationals, truncated Laurent series, or complex floats.  Binary
/// operations require matching tags (and matching variables for series);
/// nothing is coerced implicitly — checkers lift constants explicitly.
class Scalar {
public:
    Scalar() : v_(Rational(0)) {}
    explicit Scalar(Rational r) : v_(std::move(r)) {}
    explicit Scalar(Series s) : v_(std::move(s)) {}
    explicit Scalar(Cplx z) : v_(z) {}

    bool is_rational() const { return std::holds_alternative<Rational>(v_); }
    bool is_series() const { return std::holds_alternative<Series>(v_); }
    bool is_float() const { return std::holds_alternative<Cplx>(v_); }

    const Rational& rational() const;
    const Series& series() const;
    Cplx cplx() const;

    /// Exact zero test (for floats: |z| == 0).  A truncated series counts as
    /// zero when every known coefficient vanishes.
    bool is_zero() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);

    /// Exact structural equality (false across rings; series compare values
    /// and validity; floats compare bitwise).  For float tolerance checks
    /// use almost_equal instead.
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) {
        return !(a == b);
    }

    Scalar inverse() const;
    Scalar pow(long k) const;

    std::string to_string() const;

private:
    std::variant<Rational, Series, Cplx> v_;

    static void require_compatible(const Scalar& a, const Scalar& b);
};

/// |a-b| <= tol * max(1, |a|, |b|): relative comparison with an absolute
/// floor for values near zero.
bool almost_equal(Cplx a, Cplx b, double rel_tol);

/// Additive zero in the same ring as x (matching variable and validity for
/// series operands).
Scalar zero_like(const Scalar& x);

/// Exact determinant by cofactor expansion with subset memoization
/// (fraction-free in the sense that only ring operations are used).
/// Entries must share a ring; n <= 8.
Scalar det(const std::vector<std::vector<Scalar>>& m);

}  // namespace qbc
