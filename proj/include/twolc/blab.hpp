#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "twolc/bigint.hpp"
#include "twolc/continued_fraction.hpp"
#include "twolc/rational.hpp"
#include "twolc/surd.hpp"

namespace twolc {

/// M = max partial quotient a_n over n >= 1, B = max over the period.
struct BMStats {
    Integer M;
    Integer B;
};

/// Throws std::invalid_argument unless cf is eventually periodic.
BMStats stats(const ContinuedFraction& cf);
BMStats stats(const QuadraticSurd& s);

/// Max of a1..an; only a lower bound for M of a stream.
Integer m_lower_bound(const ContinuedFraction& cf, std::size_t n);

/// 1/(M+2) <= m <= 1/M for the approximation constant and 1/(B+2) <= c <= 1/B
/// for the Lagrange value.
struct LagrangeBounds {
    Rational m_lo, m_hi;
    Rational c_lo, c_hi;
};

/// Throws std::invalid_argument if M or B is below 1.
LagrangeBounds lagrange_bounds(const BMStats& s);

/// For s ~ [0; (1)], checks 2s ~ [0; (4)]. Throws std::invalid_argument for
/// s outside the golden class.
bool golden_doubling_check(const QuadraticSurd& s);

enum class B2Shape {
    None,
    /// tail (2) entered with q_n, q_{n-1} both odd
    Shape2,
    /// tail (2, 1) entered with q_{n-1} even
    Shape21,
};

const char* to_string(B2Shape s);

/// Shape of the canonical expansion at its preperiod junction.
B2Shape b2_shape(const ContinuedFraction& cf);

/// (B(s) <= 2 and B(2s) <= 2) == (b2_shape(s) != None)
bool b2_characterization_holds(const QuadraticSurd& s);

struct B2Report {
    std::size_t checked = 0;
    std::size_t shape2 = 0;
    std::size_t shape21 = 0;
    /// Inputs where the biconditional fails.
    std::vector<ContinuedFraction> exceptions;
    double seconds = 0;

    bool ok() const { return exceptions.empty(); }
};

/// Every [0; pre, (period)] with digits in {1, 2}, |period| <= period_max and
/// |pre| <= preperiod_max, skipping presentations equal to a shorter one.
B2Report b2_exhaustive(std::size_t period_max, std::size_t preperiod_max, unsigned jobs = 1);

/// Lyndon words of length 1..n over digits 1..k, in lexicographic order.
std::vector<Digits> lyndon_words(std::size_t n, unsigned k);

struct FalsifyCandidate {
    /// The enumerated number: alpha for C = 2, 4 alpha for C = 3, 4.
    ContinuedFraction x;
    /// (k, B(2^k alpha)) for each k checked.
    std::vector<std::pair<int, Integer>> b_values;

    std::string str() const;
};

/// A 4 alpha ~ [(3; 1, 1)] instance: k0 >= 2 is the last exponent in the run
/// of 2^k alpha staying in that class, and B(2^(k0+1) alpha) should equal 8.
struct WhitelistEntry {
    ContinuedFraction x;
    unsigned k0 = 0;
    Integer b_after;

    bool verified() const { return b_after == 8; }
};

struct FalsifyReport {
    unsigned C = 0;
    std::size_t period_max = 0;
    std::size_t preperiod_max = 0;
    std::size_t checked = 0;
    std::vector<FalsifyCandidate> counterexamples;
    std::vector<WhitelistEntry> whitelisted;
    double seconds = 0;

    /// No counterexample and every whitelist entry verified.
    bool ok() const;
    std::string json() const;
};

/// Bounded search for violations of the B lower bounds.
///  C = 2: B(alpha/2) >= 3 or B(2 alpha) >= 3, alpha with digits <= 3.
///  C = 3: B(4 alpha) = 3 and 4 alpha not ~ [(3; 1, 1)] imply B(2^k alpha) >= 4
///         for some k in {0, 1, 3, 4}.
///  C = 4: B(4 alpha) = 4 implies B(2^k alpha) >= 5 for some k in {0, 1, 3, 4}.
/// For C = 3, 4 the enumerated x = 4 alpha has period digits <= C (with at
/// least one equal to C) and preperiod digits <= C + 1; for C = 2 all digits
/// are <= 3. Periods run over Lyndon words, a0 = 0. Throws
/// std::invalid_argument for C outside 2..4.
FalsifyReport falsify_bbound(unsigned C, std::size_t period_max, std::size_t preperiod_max, unsigned jobs = 1);

}  // namespace twolc
