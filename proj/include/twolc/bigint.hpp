#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace twolc {

/// Arbitrary-precision signed integer used throughout the library.
using Integer = mpz_class;

/// Floor of the square root of a nonnegative integer.
Integer isqrt(const Integer& n);

bool is_perfect_square(const Integer& n);

/// floor(a / b) for b != 0, rounding toward negative infinity.
Integer floor_div(const Integer& a, const Integer& b);

Integer gcd(const Integer& a, const Integer& b);

/// 2-adic valuation of a nonzero integer.
std::uint64_t valuation2(const Integer& n);

/// True iff n fits in a signed 64-bit integer.
bool fits_int64(const Integer& n);

std::int64_t to_int64(const Integer& n);

inline Integer make_integer(std::int64_t v) {
    Integer r;
    mpz_set_si(r.get_mpz_t(), static_cast<long>(v));
    return r;
}

std::string to_string(const Integer& n);

}  // namespace twolc
