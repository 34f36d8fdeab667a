#pragma once

#include <string>
#include <vector>

#include "qbc/series.hpp"

namespace qbc {

/// Polynomial in q with integer coefficients, stored densely from q^0.
/// Backs the finite pieces of the theta-quotient identities: the two
/// families of Schur polynomials, Gaussian binomial coefficients, and the
/// small auxiliary polynomials f_delta.  Degrees stay tiny (a few dozen),
/// so long long coefficients are ample and every operation checks for
/// overflow-free ranges only implicitly through that bound.
class QPoly {
public:
    QPoly() = default;  // zero

    static QPoly constant(long long c);
    static QPoly monomial(long long c, int e);  // c q^e, e >= 0

    bool is_zero() const { return c_.empty(); }
    /// Degree in q; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    long long coeff(int e) const;

    QPoly operator-() const;
    friend QPoly operator+(const QPoly& a, const QPoly& b);
    friend QPoly operator-(const QPoly& a, const QPoly& b);
    friend QPoly operator*(const QPoly& a, const QPoly& b);
    QPoly& operator+=(const QPoly& o) { return *this = *this + o; }
    QPoly& operator-=(const QPoly& o) { return *this = *this - o; }
    QPoly& operator*=(const QPoly& o) { return *this = *this * o; }

    bool operator==(const QPoly& o) const { return c_ == o.c_; }
    bool operator!=(const QPoly& o) const { return !(*this == o); }

    /// Multiply by q^e.  Negative e requires exact divisibility (the low
    /// coefficients must vanish) and throws otherwise.
    QPoly shifted(int e) const;

    /// Exactly-known series in sqrt(q) (exponents doubled: q^e -> var^{2e}).
    Series to_series() const;

    std::string to_string() const;

private:
    std::vector<long long> c_;  // c_[e] = coefficient of q^e; back() != 0
    void normalize();
};

/// First Schur polynomial family: D_0 = 1, D_1 = 1 + q, and
/// D_d = D_{d-1} + q^d D_{d-2}.  Negative indices are defined by running
/// the recursion backwards (D_{d-2} = (D_d - D_{d-1}) q^{-d}), which stays
/// polynomial for every integer d.
QPoly schur_D(int d);

/// Second family with the same recursion and E_0 = E_1 = 1.
QPoly schur_E(int d);

/// Gaussian binomial coefficient [n, m]_q; zero unless 0 <= m <= n.
QPoly qbinom(int n, int m);

/// Polynomial in x whose coefficients are polynomials in q; entry [k] is
/// the coefficient of x^k.
using XPoly = std::vector<QPoly>;

XPoly xpoly_mul(const XPoly& a, const XPoly& b);

/// f_0(x) = 1 + x and, for d >= 1,
/// f_d(x) = (1 - x^2 q^d) prod_{r=1}^{d-1} (1 - q^r x).
XPoly f_delta(int d);

}  // namespace qbc
