#include "qbc/scalar.hpp"

#include <cmath>
#include <sstream>

#include "qbc/errors.hpp"

namespace qbc {

namespace {

const char* tag_name(const Scalar& s) {
    if (s.is_rational()) return "rational";
    if (s.is_series()) return "series";
    return "float";
}

}  // namespace

const Rational& Scalar::rational() const {
    if (!is_rational()) throw TagError("expected rational scalar");
    return std::get<Rational>(v_);
}

const Series& Scalar::series() const {
    if (!is_series()) throw TagError("expected series scalar");
    return std::get<Series>(v_);
}

Cplx Scalar::cplx() const {
    if (!is_float()) throw TagError("expected float scalar");
    return std::get<Cplx>(v_);
}

bool Scalar::is_zero() const {
    if (is_rational()) return qbc::is_zero(rational());
    if (is_series()) return series().is_zero();
    return std::abs(cplx()) == 0.0;
}

void Scalar::require_compatible(const Scalar& a, const Scalar& b) {
    if (a.v_.index() != b.v_.index())
        throw TagError(std::string(tag_name(a)) + " combined with " +
                       tag_name(b));
    if (a.is_series() && a.series().var() != b.series().var())
        throw TagError(std::string("series in ") + var_name(a.series().var()) +
                       " combined with series in " + var_name(b.series().var()));
}

Scalar Scalar::operator-() const {
    if (is_rational()) return Scalar(-rational());
    if (is_series()) return Scalar(-series());
    return Scalar(-cplx());
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    Scalar::require_compatible(a, b);
    if (a.is_rational()) return Scalar(a.rational() + b.rational());
    if (a.is_series()) return Scalar(a.series() + b.series());
    return Scalar(a.cplx() + b.cplx());
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
    Scalar::require_compatible(a, b);
    if (a.is_rational()) return Scalar(a.rational() * b.rational());
    if (a.is_series()) return Scalar(a.series() * b.series());
    return Scalar(a.cplx() * b.cplx());
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

Scalar Scalar::inverse() const {
    if (is_rational()) {
        if (qbc::is_zero(rational())) throw PoleError("1/0 in rational ring");
        return Scalar(Rational(1) / rational());
    }
    if (is_series()) return Scalar(series().inverse());
    Cplx z = cplx();
    if (std::abs(z) < 1e-290) throw PoleError("1/0 in float ring");
    return Scalar(Cplx(1.0) / z);
}

Scalar Scalar::pow(long k) const {
    if (is_rational()) return Scalar(rat_pow(rational(), k));
    if (is_series()) return Scalar(series().pow(k));
    if (k == 0) return Scalar(Cplx(1.0));
    Cplx z = cplx();
    if (k < 0) return inverse().pow(-k);
    Cplx acc(1.0);
    Cplx base = z;
    unsigned long e = static_cast<unsigned long>(k);
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return Scalar(acc);
}

std::string Scalar::to_string() const {
    if (is_rational()) return qbc::to_string(rational());
    if (is_series()) return series().to_string();
    std::ostringstream os;
    os.precision(15);
    os << "(" << cplx().real() << "," << cplx().imag() << ")";
    return os.str();
}

bool almost_equal(Cplx a, Cplx b, double rel_tol) {
    double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= rel_tol * scale;
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.v_.index() != b.v_.index()) return false;
    if (a.is_rational()) return a.rational() == b.rational();
    if (a.is_series()) return a.series() == b.series();
    return a.cplx() == b.cplx();
}

Scalar zero_like(const Scalar& x) {
    if (x.is_rational()) return Scalar(Rational(0));
    if (x.is_series())
        return Scalar(Series::zero(x.series().var(), x.series().order()));
    return Scalar(Cplx(0.0));
}

namespace {

// det of the submatrix of the rows in `rows` and the first |rows| columns,
// expanding along the last column; memoized on the row-subset bitmask.
Scalar det_rec(const std::vector<std::vector<Scalar>>& m, unsigned rows,
               std::vector<Scalar>& memo, std::vector<bool>& have) {
    if (have[rows]) return memo[rows];
    int size = __builtin_popcount(rows);
    int col = size - 1;
    Scalar acc;
    bool first = true;
    int sign_idx = 0;  // position of the row within the subset
    for (unsigned r = 0; r < m.size(); ++r) {
        if (!(rows & (1u << r))) continue;
        Scalar term;
        if (size == 1) {
            term = m[r][col];
        } else {
            term = m[r][col] * det_rec(m, rows & ~(1u << r), memo, have);
        }
        if ((size - 1 - sign_idx) % 2 != 0) term = -term;
        if (first) {
            acc = term;
            first = false;
        } else {
            acc += term;
        }
        ++sign_idx;
    }
    have[rows] = true;
    memo[rows] = acc;
    return acc;
}

}  // namespace

Scalar det(const std::vector<std::vector<Scalar>>& m) {
    size_t n = m.size();
    if (n == 0) throw Error("det of empty matrix");
    if (n > 8) throw Error("det limited to n <= 8");
    for (const auto& row : m)
        if (row.size() != n) throw Error("det of non-square matrix");
    std::vector<Scalar> memo(1u << n);
    std::vector<bool> have(1u << n, false);
    return det_rec(m, (1u << n) - 1, memo, have);
}

}  // namespace qbc
