#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twolc/bigint.hpp"
#include "twolc/continued_fraction.hpp"
#include "twolc/rational.hpp"
#include "twolc/surd.hpp"

namespace twolc {

/// Least rotation of the primitive period. Equal keys mean equal tails.
struct ClassKey {
    Digits word;

    std::size_t period_length() const { return word.size(); }
    Integer period_max() const;
    /// `(3, 1, 1)`
    std::string str() const;

    friend auto operator<=>(const ClassKey& a, const ClassKey& b) { return a.word <=> b.word; }
    friend bool operator==(const ClassKey& a, const ClassKey& b) = default;
};

ClassKey class_key(const QuadraticSurd& s);
/// Throws std::invalid_argument unless cf is eventually periodic.
ClassKey class_key(const ContinuedFraction& cf);
/// Purely periodic representative [(word)] of the class.
QuadraticSurd class_representative(const ClassKey& key);

bool equivalent(const QuadraticSurd& a, const QuadraticSurd& b);

/// Unimodular map with t = (a s + b) / (c s + d), ad - bc = +-1, together with
/// the multiplier l relating the minimal polynomial of s to the one implied by
/// the map.
struct Certificate {
    Integer a, b, c, d, l;
};

/// Certificate for (u s + v) / w ~ s: integers with l A = u c,
/// l B = u d + v c - w a, l C = v d - w b and ad - bc = +-1, where
/// A x^2 + B x + C is the minimal polynomial of s. Searches 1 <= |l| <= l_bound
/// (positive l first) and |d| <= d_bound, smallest d first; d is solved from
/// the determinant condition, so d_bound costs nothing.
std::optional<Certificate> affine_certificate(const QuadraticSurd& s, const Integer& u,
                                              const Integer& v, const Integer& w,
                                              const Integer& l_bound, const Integer& d_bound);
inline std::optional<Certificate> affine_certificate(const QuadraticSurd& s, const Integer& u,
                                                     const Integer& v, const Integer& w,
                                                     const Integer& bound) {
    return affine_certificate(s, u, v, w, bound, bound);
}

/// Certificate for m s ~ s. For integer m this is the system l A = m c,
/// l B = m d - a, l C = -b. Throws std::invalid_argument for m = 0.
std::optional<Certificate> m_equiv_certificate(const QuadraticSurd& s, const Rational& m,
                                               const Integer& l_bound, const Integer& d_bound);
inline std::optional<Certificate> m_equiv_certificate(const QuadraticSurd& s, const Rational& m,
                                                      const Integer& bound) {
    return m_equiv_certificate(s, m, bound, bound);
}

enum class Image { Double, Half, HalfPlus1 };

const char* to_string(Image i);

/// Members of {2 beta, beta/2, (beta+1)/2} equivalent to alpha. Throws
/// std::invalid_argument unless alpha is self-similar and beta ~ alpha.
std::vector<Image> two_of_three(const QuadraticSurd& beta, const QuadraticSurd& alpha);

/// s ~ s/2 ~ (s+1)/2. A property of the number: s/2 is in the class of s but
/// need not satisfy it.
bool self_similar_check(const QuadraticSurd& s);

struct ChainResult {
    QuadraticSurd beta;
    std::size_t K = 0;
    ClassKey target;
    /// class_key(2^k beta) for k = 0..K.
    std::vector<ClassKey> checks;
    /// Halving chosen at each descent, starting from alpha.
    std::vector<Image> steps;

    bool verified() const;
};

/// beta with 2^k beta ~ alpha for 0 <= k <= K, found by K halvings of alpha.
/// Throws std::invalid_argument unless alpha is self-similar.
ChainResult build_chain(const QuadraticSurd& alpha, std::size_t K);

/// Positive root of x^2 - m x - 2 for odd m >= 3.
QuadraticSurd family_member(const Integer& m);

QuadraticSurd alpha_mK(const Integer& m, std::size_t K);

struct ScanHit {
    std::int64_t D = 0;
    std::int64_t Q = 0;
    std::int64_t P = 0;
    ClassKey key;

    QuadraticSurd surd() const;
};

struct ScanOptions {
    std::int64_t d_min = 2;
    std::int64_t d_max = 1000;
    std::int64_t q_max = 50;
    unsigned jobs = 1;
};

/// Self-similar classes met by (P + sqrt D)/Q with 0 <= P < Q <= q_max,
/// Q | D - P^2 and D nonsquare in [d_min, d_max]. One hit per class, taken at
/// the least (D, Q, P); hits sorted by (D, Q, P). Throws std::invalid_argument
/// for D outside [2, 2^40] or q_max outside [1, 2^24].
std::vector<ScanHit> scan_self_similar(const ScanOptions& opts);

/// D,Q,P,period_len,period_max,class_key
std::string scan_csv(const std::vector<ScanHit>& hits);

}  // namespace twolc
