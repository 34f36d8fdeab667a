#pragma once

#include <gmpxx.h>

#include <string>

#include "qbc/errors.hpp"

namespace qbc {

/// Exact rational number.  GMP's mpq_class already guarantees the invariants
/// we need (always reduced, denominator > 0) for values produced by
/// arithmetic; the helpers below cover construction and formatting.
using Rational = mpq_class;

/// Build a reduced rational with positive denominator.  Throws on den == 0.
inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw Error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }
inline bool is_one(const Rational& r) { return r == 1; }

/// Integer power with negative exponents allowed (throws PoleError on 0^-k).
inline Rational rat_pow(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    if (is_zero(base)) {
        if (e < 0) throw PoleError("0^negative");
        return Rational(0);
    }
    Rational num;
    mpz_pow_ui(num.get_num_mpz_t(), base.get_num_mpz_t(),
               static_cast<unsigned long>(e > 0 ? e : -e));
    mpz_pow_ui(num.get_den_mpz_t(), base.get_den_mpz_t(),
               static_cast<unsigned long>(e > 0 ? e : -e));
    if (e < 0) {
        num = Rational(1) / num;
    }
    return num;
}

/// "num/den" (or plain "num" when den == 1).
inline std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace qbc
