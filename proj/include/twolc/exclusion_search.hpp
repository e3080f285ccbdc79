#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "twolc/bigint.hpp"
#include "twolc/continued_fraction.hpp"
#include "twolc/rational.hpp"
#include "twolc/surd.hpp"

namespace twolc {

/// Digit word a1..an with entries in [1, C].
using Word = std::vector<std::uint32_t>;

std::string to_string(const Word& w);

/// Rational hull [lo, hi] of all alpha = [0; w, b_{n+1}, ...] with b_i in [1, C].
struct Interval {
    Rational lo;
    Rational hi;
};

/// Throws std::invalid_argument if w is empty or has a digit outside [1, C].
Interval interval_bounds(const Word& w, std::uint32_t C);

/// Common leading digits of two distinct rationals' canonical expansions.
/// `shared` holds a0, a1, ..., a_lim. When either expansion ends within one
/// digit past the full match the last shared digit is dropped (position 0
/// is never dropped). `next_min` is min of both digits at lim + 1 if both
/// exist. An empty `shared` means the integer parts differ.
struct PrefixInfo {
    Digits shared;
    std::optional<Integer> next_min;
};

PrefixInfo common_prefix_info(const Rational& x, const Rational& y);

struct ExclusionWitness {
    enum class Kind { SharedDigit, NextDigitMin };

    Word prefix;
    unsigned k = 0;
    std::size_t position = 0;
    Integer bound;
    Kind kind = Kind::SharedDigit;

    /// `w=<digits> k=<k> pos=<i> bound=<b>`
    std::string str() const;
};

/// Doubles the interval endpoints k = 1, 2, ..., k_cap times and looks for
/// a forced digit > C. Stops without excluding once the integer parts
/// differ. Throws std::invalid_argument on a malformed word or k_cap < 1.
std::optional<ExclusionWitness> try_exclude(const Word& w, std::uint32_t C, unsigned k_cap = 256);

struct DepthStats {
    std::size_t n = 0;
    std::size_t frontier = 0;
    std::size_t excluded = 0;
};

struct SearchOptions {
    std::size_t max_depth = 200;
    unsigned k_cap = 256;
    unsigned jobs = 1;
    bool keep_witnesses = false;
};

struct SearchReport {
    std::uint32_t C = 0;
    bool terminated = false;
    std::size_t max_depth_reached = 0;
    unsigned K = 0;
    std::vector<DepthStats> depths;
    double seconds = 0;
    /// In frontier order; filled only with keep_witnesses.
    std::vector<ExclusionWitness> witnesses;

    /// {C, terminated, K, depths: [{n, frontier, excluded}], seconds}
    std::string json() const;

    /// Everything except wall time.
    bool same_result(const SearchReport& o) const;
};

/// Breadth-first exclusion search from all depth-2 words. The report does
/// not depend on opts.jobs.
SearchReport run_search(std::uint32_t C, const SearchOptions& opts = {});

struct QWitness {
    unsigned k = 0;
    /// Index of the large digit a_n(2^k s).
    std::size_t n = 0;
    Integer digit;
    /// 2^k q_{n-1}(2^k s)
    Integer q;
    /// q |q|_2 ||q s|| as an exact surd.
    QuadraticSurd value;
    /// Rational upper bound odd(q) / (q_{n-1} a_n) for value.
    Rational bound;
};

class WitnessSearchExhausted : public std::runtime_error {
public:
    explicit WitnessSearchExhausted(unsigned k_reached);
    unsigned k_reached() const { return k_reached_; }

private:
    unsigned k_reached_;
};

/// Finds q with q |q|_2 ||q s|| < threshold by locating a digit
/// a_n(2^k s) >= 1 / threshold. Throws WitnessSearchExhausted past k_cap and
/// std::invalid_argument for a threshold outside (0, 1].
QWitness witness_q(const QuadraticSurd& s, const Rational& threshold = Rational(1, 15),
                   unsigned k_cap = 200);

}  // namespace twolc
