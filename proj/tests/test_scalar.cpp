#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <sstream>
#include <vector>

#include "qbc/errors.hpp"
#include "qbc/rational.hpp"
#include "qbc/scalar.hpp"
#include "qbc/series.hpp"
#include "test_util.hpp"

using namespace qbc;
using qbc_test::random_rational;
using qbc_test::random_series;
using qbc_test::same_values;

namespace {

Series q_monomial(const Rational& c, long q_exp, int order = Series::kExactOrder) {
    // q = sqrtq^2: exponents in sqrtq units are twice the q exponent.
    return Series::monomial(Var::SqrtQ, c, 2 * q_exp, order);
}

/// (q^{a}; q^{b})_inf truncated to sqrtq order `order2`, built directly from
/// its factor list; independent of the library's Pochhammer layer.
Series poch_inf_oracle(long a, long b, int order2) {
    Series acc = Series::constant(Var::SqrtQ, Rational(1), order2);
    for (long e = a; 2 * e <= order2; e += b)
        acc = acc.times_binomial(Rational(1), 2 * e);
    return acc;
}

}  // namespace

TEST_CASE("rational basics") {
    Rational r = make_rational(6, -4);
    CHECK(r == make_rational(-3, 2));
    CHECK(to_string(r) == "-3/2");
    CHECK_THROWS_AS(make_rational(1, 0), Error);
    CHECK(rat_pow(make_rational(-2, 3), 3) == make_rational(-8, 27));
    CHECK(rat_pow(make_rational(-2, 3), -2) == make_rational(9, 4));
    CHECK(rat_pow(Rational(0), 4) == 0);
    CHECK_THROWS_AS(rat_pow(Rational(0), -1), PoleError);
}

TEST_CASE("series construction and coefficient access") {
    Series s = Series::monomial(Var::SqrtQ, Rational(3), 4, 10);
    CHECK(s.coeff(4) == 3);
    CHECK(s.coeff(5) == 0);
    CHECK(s.coeff(-7) == 0);
    CHECK_THROWS_AS(s.coeff(11), OrderError);
    CHECK(s.min_exp() == 4);
    CHECK(Series::zero(Var::SqrtQ, 7).min_exp() == 8);

    // difference of squares at order 6 (exponents in the series variable)
    Series one = Series::constant(Var::SqrtQ, Rational(1), 6);
    Series x2 = Series::monomial(Var::SqrtQ, Rational(1), 2, 6);
    Series prod = (one + x2) * (one - x2);
    CHECK(prod.coeff(0) == 1);
    CHECK(prod.coeff(2) == 0);
    CHECK(prod.coeff(4) == -1);
    CHECK(prod.order() == 6);
}

TEST_CASE("series variable mismatch is an error") {
    Series a = Series::constant(Var::SqrtQ, Rational(1), 5);
    Series b = Series::constant(Var::P, Rational(1), 5);
    CHECK_THROWS_AS(a + b, TagError);
    CHECK_THROWS_AS(a * b, TagError);
    CHECK_THROWS_AS(series_eq(a, b, 3), TagError);
}

TEST_CASE("multiplication adjusts order for Laurent offsets") {
    // a = q^-1 + 1, valid to order 4; b = 1 + q, valid to order 2 (sqrtq units)
    Series a = Series::monomial(Var::SqrtQ, Rational(1), -2, 8) +
               Series::constant(Var::SqrtQ, Rational(1), 8);
    Series b = Series::constant(Var::SqrtQ, Rational(1), 4) +
               Series::monomial(Var::SqrtQ, Rational(1), 2, 4);
    Series prod = a * b;
    // unknown tail of b (from exponent 5) times min term of a (exp -2): 3
    CHECK(prod.order() == 2);
    CHECK(prod.coeff(-2) == 1);
    CHECK(prod.coeff(0) == 2);
    CHECK(prod.coeff(2) == 1);
}

TEST_CASE("series_eq reports the first mismatch") {
    // 1+q vs 1+2q must fail at exponent 2 in sqrtq (the q^1 coefficient)
    Series a = Series::constant(Var::SqrtQ, Rational(1), 10) + q_monomial(Rational(1), 1, 10);
    Series b = Series::constant(Var::SqrtQ, Rational(1), 10) + q_monomial(Rational(2), 1, 10);
    auto mism = series_eq(a, b, 10);
    REQUIRE(mism.has_value());
    CHECK(mism->exponent == 2);
    CHECK(mism->lhs == 1);
    CHECK(mism->rhs == 2);
    CHECK(!series_eq(a, a, 10).has_value());
    CHECK_THROWS_AS(series_eq(a, b, 11), OrderError);
}

TEST_CASE("geometric series inverse") {
    // inv(1-q) to q-order 3 == 1+q+q^2+q^3 (sqrtq order 6)
    Series a = Series::constant(Var::SqrtQ, Rational(1), 6) - q_monomial(Rational(1), 1, 6);
    Series inv = a.inverse();
    for (long e = 0; e <= 3; ++e) CHECK(inv.coeff(2 * e) == 1);
    CHECK(inv.coeff(1) == 0);

    Series one = Series::constant(Var::SqrtQ, Rational(1));
    CHECK(one.inverse().coeff(0) == 1);
    CHECK(one.inverse().known_exactly());
}

TEST_CASE("inverting an exact multi-term series needs a working order") {
    Series a = Series::constant(Var::SqrtQ, Rational(1)) - q_monomial(Rational(1), 1);
    CHECK_THROWS_AS(a.inverse(), OrderError);
    WorkingOrderGuard guard(12);
    Series inv = a.inverse();
    CHECK(inv.order() == 12);
    CHECK(inv.coeff(12) == 1);
}

TEST_CASE("ring axioms on random triples") {
    std::mt19937_64 rng(20260823);
    for (int it = 0; it < 200; ++it) {
        Series a = random_series(rng, Var::SqrtQ);
        Series b = random_series(rng, Var::SqrtQ);
        Series c = random_series(rng, Var::SqrtQ);
        CHECK(same_values((a + b) + c, a + (b + c)));
        CHECK(same_values((a * b) * c, a * (b * c)));
        CHECK(same_values(a * b, b * a));
        CHECK(same_values(a + b, b + a));
        CHECK(same_values(a * (b + c), a * b + a * c));

        Rational x = random_rational(rng), y = random_rational(rng),
                 z = random_rational(rng);
        CHECK((x + y) + z == x + (y + z));
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
    }
}

TEST_CASE("inverse roundtrip on random unit series") {
    std::mt19937_64 rng(987654321);
    for (int it = 0; it < 100; ++it) {
        Series a = random_series(rng, Var::SqrtQ, /*unit=*/true);
        Series inv = series_inv(a);
        Series prod = series_mul(a, inv);
        int check_order = static_cast<int>(a.order() - a.min_exp());
        Series one = Series::constant(Var::SqrtQ, Rational(1));
        CHECK(!series_eq(prod, one.truncated(prod.order()),
                         std::min(check_order, prod.order()))
                   .has_value());
    }
}

TEST_CASE("product_trunc basics and idempotence") {
    // (q;q)_inf to q-order 15: pentagonal-sparse coefficients
    Series penta = poch_inf_oracle(1, 1, 30);
    long expect_exp[] = {0, 1, 2, 5, 7, 12, 15};
    int expect_sign[] = {1, -1, -1, 1, 1, -1, -1};
    long nonzero = 0;
    for (long e = 0; e <= 30; ++e) {
        Rational c = penta.coeff(e);
        if (qbc::is_zero(c)) continue;
        REQUIRE(nonzero < 7);
        CHECK(e == 2 * expect_exp[nonzero]);
        CHECK(c == expect_sign[nonzero]);
        ++nonzero;
    }
    CHECK(nonzero == 7);

    // the same product through the generator interface
    long i = 0;
    Series penta2 = product_trunc(Var::SqrtQ, 30, [&]() {
        std::optional<std::pair<Rational, long>> f(
            std::in_place, Rational(1), 2 * (1 + i));
        ++i;
        return f;
    });
    CHECK(penta2 == penta.truncated(30));

    // appending factors beyond the order does not change anything
    long j = 0;
    Series penta3 = product_trunc(Var::SqrtQ, 30, [&]() {
        std::optional<std::pair<Rational, long>> f(
            std::in_place, Rational(1), 2 * (1 + j));
        ++j;
        if (j > 60) return std::optional<std::pair<Rational, long>>();
        return f;
    });
    CHECK(penta3 == penta2);

    // empty generator -> 1
    Series one = product_trunc(Var::SqrtQ, 10, []() {
        return std::optional<std::pair<Rational, long>>();
    });
    CHECK(one.coeff(0) == 1);

    // (q^5;q^5)_inf to q-order 4 -> 1
    Series f5 = poch_inf_oracle(5, 5, 8);
    CHECK(f5.coeff(0) == 1);
    for (long e = 1; e <= 8; ++e) CHECK(f5.coeff(e) == 0);
}

TEST_CASE("first Rogers-Ramanujan product series") {
    // 1/((q;q^5)(q^4;q^5))_inf: partition counts into parts = +-1 mod 5.
    int order2 = 24;  // q-order 12
    WorkingOrderGuard guard(order2);
    Series denom = poch_inf_oracle(1, 5, order2) * poch_inf_oracle(4, 5, order2);
    Series rr = denom.inverse();

    long expected[] = {1, 1, 1, 1, 2, 2, 3, 3, 4, 5, 6, 7, 9};
    for (long e = 0; e <= 12; ++e) CHECK(rr.coeff(2 * e) == expected[e]);

    // independent oracle: direct bounded partition count into parts
    // congruent to +-1 mod 5
    std::vector<long> count(13, 0);
    count[0] = 1;
    for (long part = 1; part <= 12; ++part) {
        if (part % 5 != 1 && part % 5 != 4) continue;
        for (long n = part; n <= 12; ++n) count[n] += count[n - part];
    }
    for (long e = 0; e <= 12; ++e) CHECK(rr.coeff(2 * e) == count[e]);
}

TEST_CASE("determinant basics") {
    auto R = [](long v) { return Scalar(Rational(v)); };
    std::vector<std::vector<Scalar>> id3 = {
        {R(1), R(0), R(0)}, {R(0), R(1), R(0)}, {R(0), R(0), R(1)}};
    CHECK(det(id3).rational() == 1);

    std::vector<std::vector<Scalar>> swap2 = {{R(0), R(1)}, {R(1), R(0)}};
    CHECK(det(swap2).rational() == -1);

    std::vector<std::vector<Scalar>> mixed = {
        {R(1), Scalar(Series::constant(Var::SqrtQ, Rational(1)))},
        {R(1), R(1)}};
    CHECK_THROWS_AS(det(mixed), TagError);
}

TEST_CASE("determinant matches permutation-expansion oracle") {
    std::mt19937_64 rng(424242);
    for (int n = 1; n <= 4; ++n) {
        for (int it = 0; it < 20; ++it) {
            std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
            std::vector<std::vector<Scalar>> ms(n, std::vector<Scalar>(n));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    m[i][j] = random_rational(rng);
                    ms[i][j] = Scalar(m[i][j]);
                }
            // permutation expansion
            std::vector<int> perm(n);
            std::iota(perm.begin(), perm.end(), 0);
            Rational acc(0);
            do {
                int inv = 0;
                for (int i = 0; i < n; ++i)
                    for (int j = i + 1; j < n; ++j)
                        if (perm[i] > perm[j]) ++inv;
                Rational t(inv % 2 ? -1 : 1);
                for (int i = 0; i < n; ++i) t *= m[i][perm[i]];
                acc += t;
            } while (std::next_permutation(perm.begin(), perm.end()));
            CHECK(det(ms).rational() == acc);
        }
    }
}

TEST_CASE("scalar tag discipline") {
    Scalar r(Rational(2));
    Scalar s(Series::constant(Var::SqrtQ, Rational(2)));
    Scalar f(Cplx(2.0, 0.0));
    CHECK_THROWS_AS(r + s, TagError);
    CHECK_THROWS_AS(s * f, TagError);
    CHECK_THROWS_AS(f - r, TagError);
    CHECK((r * r).rational() == 4);
    CHECK(r.inverse().rational() == make_rational(1, 2));
    CHECK_THROWS_AS(Scalar(Rational(0)).inverse(), PoleError);
    CHECK(almost_equal((f * f).cplx(), Cplx(4.0, 0.0), 1e-12));
}

TEST_CASE("csv dump format") {
    Series s = Series::constant(Var::SqrtQ, Rational(1), 4) +
               Series::monomial(Var::SqrtQ, make_rational(-1, 2), 2, 4);
    std::ostringstream os;
    s.dump_csv(os, 4);
    CHECK(os.str() == "0,1,1\n1,0,1\n2,-1,2\n3,0,1\n4,0,1\n");
}
