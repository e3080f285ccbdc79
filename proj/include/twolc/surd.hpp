#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "twolc/bigint.hpp"
#include "twolc/rational.hpp"

namespace twolc {

/// Primitive integer polynomial A x^2 + B x + C with A > 0.
struct MinimalPolynomial {
    Integer A;
    Integer B;
    Integer C;

    Integer discriminant() const { return B * B - 4 * A * C; }
    friend bool operator==(const MinimalPolynomial&, const MinimalPolynomial&) = default;
};

/// Real quadratic irrational (P + sqrt(D)) / Q with the positive square root.
///
/// Values are stored canonically: the primitive minimal polynomial fixes
/// (P, D, Q) up to the choice of root, and Q | D - P^2 always holds. Two
/// surds compare equal iff they are the same real number.
class QuadraticSurd {
public:
    /// Accepts any P, D > 0 nonsquare, Q != 0 and canonicalizes.
    QuadraticSurd(const Integer& P, const Integer& D, const Integer& Q);

    /// Root of A x^2 + B x + C (any common factor and sign allowed).
    static QuadraticSurd from_polynomial(Integer A, Integer B, Integer C, bool larger_root);

    /// Parses `(P + sqrt(D))/Q`, `(P - sqrt(D))/Q`, `P + sqrt(D)`, `sqrt(D)`, ...
    static QuadraticSurd parse(std::string_view text);

    const Integer& P() const { return P_; }
    const Integer& D() const { return D_; }
    const Integer& Q() const { return Q_; }

    const MinimalPolynomial& minimal_polynomial() const { return poly_; }
    /// True iff this is the larger root of its minimal polynomial.
    bool is_larger_root() const { return larger_; }

    QuadraticSurd conjugate() const;

    Integer floor() const;
    /// Sign of (this - r).
    int compare(const Rational& r) const;
    int sign() const { return compare(Rational(0)); }

    /// Trace s + conj(s) = -B/A.
    Rational trace() const { return Rational(-poly_.B, poly_.A); }
    /// Norm s * conj(s) = C/A.
    Rational norm() const { return Rational(poly_.C, poly_.A); }

    double to_double() const;
    std::string str() const;

    friend bool operator==(const QuadraticSurd& a, const QuadraticSurd& b) {
        return a.larger_ == b.larger_ && a.poly_ == b.poly_;
    }

private:
    QuadraticSurd() = default;
    void set_from_polynomial(Integer A, Integer B, Integer C, bool larger);

    MinimalPolynomial poly_;
    bool larger_ = true;
    Integer P_, D_, Q_;
};

std::ostream& operator<<(std::ostream& os, const QuadraticSurd& s);

/// (a s + b) / (c s + d); requires ad - bc != 0 and c s + d != 0.
QuadraticSurd linear_fractional(const QuadraticSurd& s, const Integer& a, const Integer& b,
                                const Integer& c, const Integer& d);

inline QuadraticSurd times2(const QuadraticSurd& s) { return linear_fractional(s, 2, 0, 0, 1); }
inline QuadraticSurd half(const QuadraticSurd& s) { return linear_fractional(s, 1, 0, 0, 2); }
inline QuadraticSurd half_plus1(const QuadraticSurd& s) { return linear_fractional(s, 1, 1, 0, 2); }
inline QuadraticSurd reciprocal(const QuadraticSurd& s) { return linear_fractional(s, 0, 1, 1, 0); }
inline QuadraticSurd translate(const QuadraticSurd& s, const Integer& n) {
    return linear_fractional(s, 1, n, 0, 1);
}
/// s * r for a nonzero rational r.
QuadraticSurd scale(const QuadraticSurd& s, const Rational& r);
/// 2^k s.
QuadraticSurd times_pow2(const QuadraticSurd& s, unsigned k);
/// s - r.
QuadraticSurd subtract(const QuadraticSurd& s, const Rational& r);

/// Distance from s to the nearest integer, as an exact surd.
QuadraticSurd distance_to_nearest_integer(const QuadraticSurd& s);

}  // namespace twolc
