#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "twolc/bigint.hpp"
#include "twolc/continued_fraction.hpp"
#include "twolc/rational.hpp"
#include "twolc/surd.hpp"

namespace twolc {

/// Euclidean expansion; the result is canonical (last digit >= 2).
ContinuedFraction cf_of_rational(const Rational& r);

/// Exact value of a finite continued fraction.
Rational eval_finite(const ContinuedFraction& cf);

/// Value of [a0; d1, ..., dn] for an arbitrary positive digit list.
Rational eval_digits(const Integer& a0, const Digits& body);

/// p_n / q_n of [a0; a1, ..., an].
struct Convergent {
    Integer p;
    Integer q;
    std::size_t index = 0;
};

/// Convergents 0..n. Throws std::out_of_range if the expansion has fewer
/// than n + 1 digits.
std::vector<Convergent> convergents(const ContinuedFraction& cf, std::size_t n);

/// Parities of q_{-1}, q_0, ..., q_n (q_{-1} = 0); entry i + 1 is q_i mod 2.
std::vector<bool> denominator_parities(const ContinuedFraction& cf, std::size_t n);

/// One complete quotient alpha_i = (R + sqrt D) / S of a surd expansion.
struct SurdState {
    Integer R;
    Integer S;
    Integer digit;
};

/// Full trace of the periodic expansion of a surd with a fixed radicand D.
/// states[i] describes alpha_i; the purely periodic cycle is
/// states[cycle_start .. states.size()).
struct SurdExpansion {
    Integer D;
    std::vector<SurdState> states;
    std::size_t cycle_start = 0;
    ContinuedFraction cf = ContinuedFraction::finite(0);
};

SurdExpansion expand_surd_trace(const QuadraticSurd& s);

/// Canonical eventually periodic expansion of a quadratic irrational.
ContinuedFraction expand_surd(const QuadraticSurd& s);

/// Inverse of expand_surd.
QuadraticSurd surd_of_periodic_cf(const ContinuedFraction& cf);

/// Lazy digit source for a surd (a0 first); never exhausts.
DigitGenerator surd_digits(const QuadraticSurd& s);

/// Smallest n >= 1 with a_n(s) >= bound, or nullopt if no digit of the
/// periodic expansion reaches it. Stops as soon as the digit is found.
std::optional<std::size_t> first_digit_at_least(const QuadraticSurd& s, const Integer& bound);

/// s > 1 and -1 < conj(s) < 0.
bool is_purely_periodic(const QuadraticSurd& s);

/// For a monic (algebraic integer) surd: the expansion is [a0; (a1, ..., an)]
/// with a1..a_{n-1} a palindrome and an = 2 a0 - trace. Throws
/// std::invalid_argument if the minimal polynomial is not monic.
bool algebraic_integer_shape_check(const QuadraticSurd& s);

/// Whether `word` reads the same backwards.
bool is_palindrome(const Digits& word);

}  // namespace twolc
