#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "twolc/bigint.hpp"
#include "twolc/continued_fraction.hpp"
#include "twolc/surd.hpp"

namespace twolc {

/// How the doubling run reaches the window (a_n, a_{n+1}, a_{n+2}).
enum class WindowCase {
    Fresh = 1,        // (a_n, a_{n+1}, a_{n+2}) itself
    Decremented = 2,  // (a_n - 1, a_{n+1}, a_{n+2})
    Skipped = 3,      // 2 a_n was recorded by the previous step
};

const char* to_string(WindowCase c);

/// Snapshot of the sliding-window state.
struct DoublingState {
    std::size_t window_index = 1;
    bool decremented = false;
    bool pending_merge = false;
    /// a / 2 of an even window is recorded; 2 a_{n+1} is still owed.
    bool awaiting_lookahead = false;
    Digits cleaned;  // last element is provisional
};

/// Push-driven multiplication by 2. Feed a0 first, then a1, a2, ...; every
/// digit that the known input determines is recorded immediately.
///
/// Raw digits are cleaned on arrival: a 0 arms a merge, the next nonzero
/// digit is added to the last cleaned digit. Hence cleaned[0..m] are final,
/// where m = cleaned().size() - 2.
class Doubler {
public:
    explicit Doubler(bool keep_raw = true) : keep_raw_(keep_raw) {}

    /// Append the next input digit and run every step it unlocks. Throws
    /// std::invalid_argument for a body digit < 1.
    void push(const Integer& digit);

    /// Append without stepping; pair with step().
    void feed(const Integer& digit);
    /// Advance by one step (or the first half of an even step) if the input
    /// allows; false means more input is needed.
    bool step();

    std::size_t consumed() const { return input_.size(); }
    const Digits& cleaned() const { return state_.cleaned; }
    const Digits& raw() const { return raw_; }
    const DoublingState& state() const { return state_; }

    /// Index of the last final cleaned digit (-1 when none is final yet).
    long final_index() const { return static_cast<long>(state_.cleaned.size()) - 2; }

    /// Case in which window n (n >= 1) was reached, if the run got there.
    std::optional<WindowCase> case_at(std::size_t n) const;
    /// Cases of windows 1, 2, ... reached so far.
    const std::vector<WindowCase>& cases() const { return cases_; }

private:
    void record(const Integer& d);
    void arrive(std::size_t n, WindowCase c);

    bool keep_raw_;
    Digits input_;
    Digits raw_;
    std::vector<WindowCase> cases_;
    DoublingState state_;
};

/// Streaming 2 alpha. The returned generator throws std::invalid_argument if
/// `src` runs dry or yields a body digit < 1.
DigitGenerator double_stream(DigitGenerator src);

/// Streaming alpha / 2 and (alpha + 1) / 2 for alpha > 0.
DigitGenerator halve_stream(DigitGenerator src);
DigitGenerator halve_plus1_stream(DigitGenerator src);

/// 2 alpha. Periodic inputs give the canonical periodic result; finite inputs
/// use exact rationals; stream inputs give a stream.
ContinuedFraction double_cf(const ContinuedFraction& cf);

/// alpha / 2 and (alpha + 1) / 2; throws std::domain_error unless alpha > 0.
ContinuedFraction halve_cf(const ContinuedFraction& cf);
ContinuedFraction halve_plus1_cf(const ContinuedFraction& cf);

/// 1 / alpha for alpha > 0 (finite or periodic).
ContinuedFraction reciprocal_cf(const ContinuedFraction& cf);

/// Predicted case of windows 1..n_max from the parities of q_{n-2}, q_{n-1}.
std::vector<WindowCase> classify_windows(const ContinuedFraction& cf, std::size_t n_max);

struct TrioResult {
    ContinuedFraction twice = ContinuedFraction::finite(0);
    ContinuedFraction half = ContinuedFraction::finite(0);
    ContinuedFraction half_plus1 = ContinuedFraction::finite(0);
    /// annotations[i] holds the cases of window n = i + 2 in the runs for
    /// 2 s, s / 2 and (s + 1) / 2.
    std::vector<std::array<WindowCase, 3>> annotations;
    /// Every annotated window saw three distinct cases.
    bool distinct = true;
};

/// 2 s, s / 2, (s + 1) / 2 with per-window case annotations for n = 2..n_max.
/// Throws std::domain_error unless s > 0.
TrioResult trio(const QuadraticSurd& s, std::size_t n_max = 60);

/// floor((n + 2) / 3) - 1 <= m <= 3 n - 1.
bool production_bounds_check(std::size_t n, long m);

}  // namespace twolc
