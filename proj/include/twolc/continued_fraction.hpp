#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "twolc/bigint.hpp"

namespace twolc {

using Digits = std::vector<Integer>;

/// Pull-style digit source. The first call yields a0, later calls yield
/// a1, a2, ...; std::nullopt signals that the source is exhausted.
using DigitGenerator = std::function<std::optional<Integer>()>;

/// Malformed CF or surd literal; `position` is the 0-based offending column.
class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& what, std::size_t position);
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Simple continued fraction [a0; a1, a2, ...] with a finite, eventually
/// periodic, or streamed body. Finite and periodic values are always held in
/// canonical form: finite bodies end in a digit >= 2, periodic bodies carry a
/// primitive period and a minimal preperiod.
class ContinuedFraction {
public:
    enum class Kind { Finite, Periodic, Stream };

    static ContinuedFraction finite(Integer a0, Digits body = {});
    static ContinuedFraction periodic(Integer a0, Digits preperiod, Digits period);
    /// `factory` must return a fresh generator (starting at a0) on every call.
    static ContinuedFraction stream(std::function<DigitGenerator()> factory);

    static ContinuedFraction parse(std::string_view text);

    Kind kind() const;
    bool is_finite() const { return kind() == Kind::Finite; }
    bool is_periodic() const { return kind() == Kind::Periodic; }

    Integer a0() const;
    /// Finite body digits a1..an.
    const Digits& body() const;
    const Digits& preperiod() const;
    const Digits& period() const;

    /// Digit a_i (i = 0 is the integer part). Throws std::out_of_range past
    /// the end of a finite expansion.
    Integer digit(std::size_t i) const;

    /// Fresh generator over a0, a1, ...; periodic bodies never exhaust.
    DigitGenerator digits() const;

    /// First `count` digits a0..a_{count-1} (fewer if the expansion is finite).
    Digits take(std::size_t count) const;

    /// Lexicographically least rotation of the period.
    Digits least_period_rotation() const;

    std::string str() const;

    friend bool operator==(const ContinuedFraction& a, const ContinuedFraction& b);

private:
    struct FiniteBody {
        Digits digits;
    };
    struct PeriodicBody {
        Digits preperiod;
        Digits period;
    };
    struct StreamBody {
        std::function<DigitGenerator()> factory;
    };

    ContinuedFraction(Integer a0, std::variant<FiniteBody, PeriodicBody, StreamBody> body)
        : a0_(std::move(a0)), body_(std::move(body)) {}

    Integer a0_;
    std::variant<FiniteBody, PeriodicBody, StreamBody> body_;
};

std::ostream& operator<<(std::ostream& os, const ContinuedFraction& cf);

/// Shortest word whose repetition gives `period`.
Digits primitive_root(const Digits& period);

/// Lexicographically least rotation of a word.
Digits least_rotation(const Digits& word);

}  // namespace twolc
