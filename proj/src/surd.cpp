#include "twolc/surd.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "twolc/continued_fraction.hpp"

namespace twolc {

QuadraticSurd::QuadraticSurd(const Integer& P, const Integer& D, const Integer& Q) {
    if (sgn(Q) == 0) throw std::domain_error("surd with zero denominator");
    if (sgn(D) <= 0) throw std::domain_error("surd radicand must be positive");
    if (is_perfect_square(D)) throw std::domain_error("surd radicand is a perfect square (rational value)");
    // Q x - P = sqrt(D)  =>  Q^2 x^2 - 2PQ x + P^2 - D = 0, and x is the
    // larger root exactly when Q > 0.
    set_from_polynomial(Q * Q, -2 * P * Q, P * P - D, sgn(Q) > 0);
}

QuadraticSurd QuadraticSurd::from_polynomial(Integer A, Integer B, Integer C, bool larger_root) {
    QuadraticSurd s;
    s.set_from_polynomial(std::move(A), std::move(B), std::move(C), larger_root);
    return s;
}

void QuadraticSurd::set_from_polynomial(Integer A, Integer B, Integer C, bool larger) {
    if (sgn(A) == 0) throw std::domain_error("degenerate (linear) polynomial");
    if (sgn(A) < 0) {
        A = -A;
        B = -B;
        C = -C;
    }
    Integer g = gcd(gcd(A, B), C);
    if (g != 1) {
        mpz_divexact(A.get_mpz_t(), A.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(B.get_mpz_t(), B.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(C.get_mpz_t(), C.get_mpz_t(), g.get_mpz_t());
    }
    Integer disc = B * B - 4 * A * C;
    if (sgn(disc) <= 0 || is_perfect_square(disc)) {
        throw std::domain_error("polynomial has no real irrational root");
    }
    // Larger root (-B + sqrt(disc)) / 2A; smaller root (B + sqrt(disc)) / -2A.
    // With B even both halve to (-B/2 + sqrt(disc/4)) / A.
    if (mpz_even_p(B.get_mpz_t())) {
        P_ = -B / 2;
        D_ = disc / 4;
        Q_ = A;
    } else {
        P_ = -B;
        D_ = disc;
        Q_ = 2 * A;
    }
    if (!larger) {
        P_ = -P_;
        Q_ = -Q_;
    }
    poly_ = MinimalPolynomial{std::move(A), std::move(B), std::move(C)};
    larger_ = larger;
}

QuadraticSurd QuadraticSurd::conjugate() const {
    return from_polynomial(poly_.A, poly_.B, poly_.C, !larger_);
}

Integer QuadraticSurd::floor() const {
    const Integer r = isqrt(D_);
    if (sgn(Q_) > 0) return floor_div(P_ + r, Q_);
    // Value is -(P + sqrt D)/|Q|, never an integer.
    return -floor_div(P_ + r, Integer(-Q_)) - 1;
}

int QuadraticSurd::compare(const Rational& r) const {
    // sign((P + sqrt D)/Q - n/d) = sign(Q) * sign(u + d sqrt D) with u = P d - n Q.
    const Integer u = P_ * r.den() - r.num() * Q_;
    int s;
    if (sgn(u) >= 0) {
        s = 1;
    } else {
        s = cmp(Integer(r.den() * r.den() * D_), Integer(u * u)) > 0 ? 1 : -1;
    }
    return sgn(Q_) > 0 ? s : -s;
}

double QuadraticSurd::to_double() const {
    mpf_class root(D_, 256);
    mpf_class num(P_, 256);
    root = sqrt(root);
    num += root;
    num /= mpf_class(Q_, 256);
    return num.get_d();
}

std::string QuadraticSurd::str() const {
    std::ostringstream os;
    if (sgn(Q_) > 0) {
        os << '(' << P_.get_str() << " + sqrt(" << D_.get_str() << "))/" << Q_.get_str();
    } else {
        os << '(' << Integer(-P_).get_str() << " - sqrt(" << D_.get_str() << "))/"
           << Integer(-Q_).get_str();
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const QuadraticSurd& s) { return os << s.str(); }

QuadraticSurd linear_fractional(const QuadraticSurd& s, const Integer& a, const Integer& b,
                                const Integer& c, const Integer& d) {
    const Integer det = a * d - b * c;
    if (sgn(det) == 0) throw std::domain_error("singular linear fractional map");
    const auto& [A, B, C] = s.minimal_polynomial();
    // Substitute s = (d x - b)/(a - c x) into A s^2 + B s + C and clear (a - c x)^2.
    Integer nA = A * d * d - B * c * d + C * c * c;
    Integer nB = -2 * A * b * d + B * (a * d + b * c) - 2 * C * a * c;
    Integer nC = A * b * b - B * a * b + C * a * a;
    if (sgn(nA) == 0) throw std::domain_error("linear fractional map has a pole at the surd");
    // x - conj(x) = det (s - conj s) / ((c s + d)(c conj(s) + d)), and the
    // denominator equals nA / A.
    const int branch = (s.is_larger_root() ? 1 : -1) * sgn(det) * sgn(nA);
    return QuadraticSurd::from_polynomial(std::move(nA), std::move(nB), std::move(nC), branch > 0);
}

QuadraticSurd scale(const QuadraticSurd& s, const Rational& r) {
    if (r.sign() == 0) throw std::domain_error("scaling a surd by zero");
    return linear_fractional(s, r.num(), 0, 0, r.den());
}

QuadraticSurd times_pow2(const QuadraticSurd& s, unsigned k) {
    Integer f;
    mpz_ui_pow_ui(f.get_mpz_t(), 2, k);
    return linear_fractional(s, f, 0, 0, 1);
}

QuadraticSurd subtract(const QuadraticSurd& s, const Rational& r) {
    // s - n/d = (d s - n) / d
    return linear_fractional(s, r.den(), -r.num(), 0, r.den());
}

QuadraticSurd distance_to_nearest_integer(const QuadraticSurd& s) {
    QuadraticSurd frac = translate(s, -s.floor());
    if (frac.compare(Rational(1, 2)) < 0) return frac;
    return linear_fractional(frac, -1, 1, 0, 1);
}

namespace {

class SurdParser {
public:
    explicit SurdParser(std::string_view text) : s_(text) {}

    QuadraticSurd parse() {
        skip_ws();
        bool paren = false;
        if (peek() == '(') {
            paren = true;
            ++pos_;
        }
        Integer P(0);
        int root_sign = 1;
        skip_ws();
        if (!at_sqrt()) {
            P = integer();
            skip_ws();
            if (peek() == '+') root_sign = 1;
            else if (peek() == '-') root_sign = -1;
            else fail("expected '+' or '-' before sqrt", pos_);
            ++pos_;
            skip_ws();
        } else if (peek() == '-') {
            root_sign = -1;
            ++pos_;
        }
        if (s_.substr(pos_, 5) != "sqrt(") fail("expected 'sqrt('", pos_);
        pos_ += 5;
        const std::size_t d_at = pos_;
        Integer D = integer();
        expect(')');
        if (paren) expect(')');
        Integer Q(1);
        skip_ws();
        if (peek() == '/') {
            ++pos_;
            const std::size_t q_at = pos_;
            Q = integer();
            if (sgn(Q) == 0) fail("zero denominator", q_at);
        }
        skip_ws();
        if (pos_ != s_.size()) fail("trailing characters", pos_);
        if (sgn(D) <= 0) fail("radicand must be positive", d_at);
        if (is_perfect_square(D)) fail("radicand is a perfect square", d_at);
        // (P - sqrt D)/Q == (-P + sqrt D)/(-Q)
        if (root_sign < 0) return QuadraticSurd(-P, D, -Q);
        return QuadraticSurd(P, D, Q);
    }

private:
    bool at_sqrt() const {
        std::size_t p = pos_;
        if (p < s_.size() && s_[p] == '-') ++p;
        return s_.substr(p, 4) == "sqrt";
    }

    Integer integer() {
        skip_ws();
        const std::size_t start = pos_;
        bool neg = false;
        if (peek() == '-' || peek() == '+') {
            neg = peek() == '-';
            ++pos_;
        }
        const std::size_t ds = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == ds) fail("expected integer", start);
        Integer v(std::string(s_.substr(ds, pos_ - ds)), 10);
        return neg ? Integer(-v) : v;
    }

    void expect(char c) {
        skip_ws();
        if (peek() != c) fail(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

    [[noreturn]] static void fail(const std::string& msg, std::size_t at) { throw ParseError(msg, at); }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

QuadraticSurd QuadraticSurd::parse(std::string_view text) { return SurdParser(text).parse(); }

}  // namespace twolc
