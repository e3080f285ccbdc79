#include "twolc/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace twolc {

Rational::Rational(Integer n, Integer d) : num_(std::move(n)), den_(std::move(d)) {
    if (sgn(den_) == 0) throw std::domain_error("rational with zero denominator");
    if (sgn(den_) < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    Integer g = gcd(num_, den_);
    if (g != 1) {
        mpz_divexact(num_.get_mpz_t(), num_.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
    }
}

Rational Rational::reciprocal() const {
    if (sgn(num_) == 0) throw std::domain_error("reciprocal of zero");
    if (sgn(num_) < 0) return Rational(-den_, -num_, Normalized{});
    return Rational(den_, num_, Normalized{});
}

Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (sgn(b.num_) == 0) throw std::domain_error("division by zero rational");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(Integer(a.num_ * b.den_), Integer(b.num_ * a.den_));
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Rational::str() const {
    if (den_ == 1) return num_.get_str();
    return num_.get_str() + "/" + den_.get_str();
}

double Rational::to_double() const {
    mpq_class q(num_, den_);
    return q.get_d();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace twolc
