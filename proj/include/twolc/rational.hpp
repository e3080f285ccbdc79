#pragma once

#include <compare>
#include <iosfwd>
#include <string>

#include "twolc/bigint.hpp"

namespace twolc {

/// Exact fraction num/den in lowest terms with den >= 1.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(Integer n) : num_(std::move(n)), den_(1) {}  // NOLINT(google-explicit-constructor)
    Rational(std::int64_t n) : num_(make_integer(n)), den_(1) {}  // NOLINT
    Rational(int n) : Rational(static_cast<std::int64_t>(n)) {}  // NOLINT
    Rational(Integer n, Integer d);

    const Integer& num() const { return num_; }
    const Integer& den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    Integer floor() const { return floor_div(num_, den_); }
    int sign() const { return sgn(num_); }

    Rational operator-() const { return Rational(-num_, den_, Normalized{}); }
    Rational reciprocal() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    std::string str() const;
    double to_double() const;

private:
    struct Normalized {};
    Rational(Integer n, Integer d, Normalized) : num_(std::move(n)), den_(std::move(d)) {}

    Integer num_;
    Integer den_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace twolc
