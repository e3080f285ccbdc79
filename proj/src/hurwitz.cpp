#include "twolc/hurwitz.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <tuple>

#include "twolc/cf_core.hpp"

namespace twolc {

const char* to_string(WindowCase c) {
    switch (c) {
        case WindowCase::Fresh: return "fresh";
        case WindowCase::Decremented: return "decremented";
        case WindowCase::Skipped: return "skipped";
    }
    return "?";
}

void Doubler::feed(const Integer& digit) {
    if (input_.empty()) {
        input_.push_back(digit);
        Integer lead = 2 * digit;
        if (keep_raw_) raw_.push_back(lead);
        state_.cleaned.push_back(std::move(lead));
        arrive(1, WindowCase::Fresh);
        return;
    }
    if (sgn(digit) <= 0) throw std::invalid_argument("partial quotient must be >= 1");
    input_.push_back(digit);
}

void Doubler::push(const Integer& digit) {
    feed(digit);
    while (step()) {
    }
}

bool Doubler::step() {
    const std::size_t n = state_.window_index;
    if (n >= input_.size()) return false;
    Integer a = input_[n];
    if (state_.decremented) a -= 1;
    if (mpz_even_p(a.get_mpz_t())) {
        // a / 2 is known before the lookahead digit arrives.
        if (!state_.awaiting_lookahead) {
            record(a / 2);
            state_.awaiting_lookahead = true;
            return true;
        }
        if (n + 1 >= input_.size()) return false;
        record(2 * input_[n + 1]);
        arrive(n + 1, WindowCase::Skipped);
        arrive(n + 2, WindowCase::Fresh);
        state_.window_index = n + 2;
        state_.decremented = false;
        state_.awaiting_lookahead = false;
    } else {
        record((a - 1) / 2);
        record(Integer(1));
        record(Integer(1));
        arrive(n + 1, WindowCase::Decremented);
        state_.window_index = n + 1;
        state_.decremented = true;
    }
    return true;
}

void Doubler::record(const Integer& d) {
    if (keep_raw_) raw_.push_back(d);
    if (sgn(d) == 0) {
        state_.pending_merge = true;
    } else if (state_.pending_merge) {
        state_.cleaned.back() += d;
        state_.pending_merge = false;
    } else {
        state_.cleaned.push_back(d);
    }
}

void Doubler::arrive(std::size_t n, WindowCase c) {
    if (cases_.size() + 1 != n) throw std::logic_error("windows reached out of order");
    cases_.push_back(c);
}

std::optional<WindowCase> Doubler::case_at(std::size_t n) const {
    if (n == 0 || n > cases_.size()) return std::nullopt;
    return cases_[n - 1];
}

namespace {

// 1/x for x > 0: [a0; a1, ...] -> [0; a0, a1, ...], or [a1; a2, ...] when a0 = 0.
DigitGenerator reciprocal_stream(DigitGenerator src) {
    struct State {
        DigitGenerator src;
        int phase = 0;  // 0: untouched, 1: emit held a0 next, 2: pass through
        Integer held;
    };
    auto st = std::make_shared<State>(State{std::move(src), 0, Integer(0)});
    return [st]() -> std::optional<Integer> {
        if (st->phase == 0) {
            auto a0 = st->src();
            if (!a0) return std::nullopt;
            if (sgn(*a0) < 0) throw std::domain_error("reciprocal of a negative expansion");
            if (sgn(*a0) == 0) {
                st->phase = 2;
                auto a1 = st->src();
                if (!a1) throw std::domain_error("reciprocal of zero");
                return a1;
            }
            st->held = *a0;
            st->phase = 1;
            return Integer(0);
        }
        if (st->phase == 1) {
            st->phase = 2;
            return st->held;
        }
        return st->src();
    };
}

DigitGenerator plus_one_stream(DigitGenerator src) {
    auto first = std::make_shared<bool>(true);
    auto s = std::make_shared<DigitGenerator>(std::move(src));
    return [first, s]() -> std::optional<Integer> {
        auto d = (*s)();
        if (d && *first) *d += 1;
        *first = false;
        return d;
    };
}

DigitGenerator require_positive_stream(DigitGenerator src) {
    auto first = std::make_shared<bool>(true);
    auto s = std::make_shared<DigitGenerator>(std::move(src));
    return [first, s]() -> std::optional<Integer> {
        auto d = (*s)();
        if (d && *first && sgn(*d) < 0) throw std::domain_error("expansion must be positive");
        *first = false;
        return d;
    };
}

bool is_positive(const ContinuedFraction& cf) {
    const Integer a0 = cf.a0();
    if (sgn(a0) < 0) return false;
    if (sgn(a0) > 0) return true;
    return !(cf.is_finite() && cf.body().empty());
}

Digits tail(const Digits& ds) { return Digits(ds.begin() + 1, ds.end()); }

}  // namespace

DigitGenerator double_stream(DigitGenerator src) {
    struct State {
        DigitGenerator src;
        Doubler doubler{false};
        std::size_t emitted = 0;
    };
    auto st = std::make_shared<State>();
    st->src = std::move(src);
    return [st]() -> std::optional<Integer> {
        while (st->doubler.final_index() < static_cast<long>(st->emitted)) {
            auto d = st->src();
            if (!d) throw std::invalid_argument("digit source exhausted (finite inputs double exactly)");
            st->doubler.push(*d);
        }
        return st->doubler.cleaned()[st->emitted++];
    };
}

DigitGenerator halve_stream(DigitGenerator src) {
    return reciprocal_stream(double_stream(reciprocal_stream(require_positive_stream(std::move(src)))));
}

DigitGenerator halve_plus1_stream(DigitGenerator src) {
    return reciprocal_stream(
        double_stream(reciprocal_stream(plus_one_stream(require_positive_stream(std::move(src))))));
}

ContinuedFraction reciprocal_cf(const ContinuedFraction& cf) {
    if (!is_positive(cf)) throw std::domain_error("reciprocal needs a positive expansion");
    if (cf.kind() == ContinuedFraction::Kind::Stream) {
        return ContinuedFraction::stream([cf] { return reciprocal_stream(cf.digits()); });
    }
    const Integer a0 = cf.a0();
    if (cf.is_finite()) {
        const Digits& body = cf.body();
        if (sgn(a0) > 0) {
            Digits nb{a0};
            nb.insert(nb.end(), body.begin(), body.end());
            return ContinuedFraction::finite(0, std::move(nb));
        }
        return ContinuedFraction::finite(body.front(), tail(body));
    }
    const Digits& pre = cf.preperiod();
    const Digits& period = cf.period();
    if (sgn(a0) > 0) {
        Digits np{a0};
        np.insert(np.end(), pre.begin(), pre.end());
        return ContinuedFraction::periodic(0, std::move(np), period);
    }
    if (!pre.empty()) return ContinuedFraction::periodic(pre.front(), tail(pre), period);
    Digits rotated = tail(period);
    rotated.push_back(period.front());
    return ContinuedFraction::periodic(period.front(), {}, std::move(rotated));
}

ContinuedFraction double_cf(const ContinuedFraction& cf) {
    if (cf.is_finite()) return cf_of_rational(eval_finite(cf) * Rational(2));
    if (cf.kind() == ContinuedFraction::Kind::Stream) {
        return ContinuedFraction::stream([cf] { return double_stream(cf.digits()); });
    }
    const std::size_t pre_end = 1 + cf.preperiod().size();
    const std::size_t m = cf.period().size();
    Doubler d(false);
    std::size_t next = 0;
    d.feed(cf.digit(next++));
    std::map<std::tuple<std::size_t, bool, bool>, std::size_t> seen;
    std::size_t first_len = 0, second_len = 0;
    bool found = false;
    while (true) {
        const DoublingState& st = d.state();
        if (!found && !st.awaiting_lookahead && st.window_index >= pre_end) {
            const auto key = std::make_tuple((st.window_index - pre_end) % m, st.decremented,
                                             st.pending_merge);
            auto [it, inserted] = seen.emplace(key, st.cleaned.size());
            if (!inserted) {
                first_len = it->second;
                second_len = st.cleaned.size();
                if (second_len <= first_len) throw std::logic_error("doubling cycle produced no digits");
                found = true;
            }
        }
        if (found && st.cleaned.size() > second_len) break;
        while (!d.step()) d.feed(cf.digit(next++));
    }
    const Digits& c = d.cleaned();
    Digits pre(c.begin() + 1, c.begin() + static_cast<std::ptrdiff_t>(first_len));
    Digits period(c.begin() + static_cast<std::ptrdiff_t>(first_len),
                  c.begin() + static_cast<std::ptrdiff_t>(second_len));
    return ContinuedFraction::periodic(c[0], std::move(pre), std::move(period));
}

ContinuedFraction halve_cf(const ContinuedFraction& cf) {
    if (!is_positive(cf)) throw std::domain_error("halving needs a positive expansion");
    if (cf.is_finite()) return cf_of_rational(eval_finite(cf) / Rational(2));
    return reciprocal_cf(double_cf(reciprocal_cf(cf)));
}

ContinuedFraction halve_plus1_cf(const ContinuedFraction& cf) {
    if (!is_positive(cf)) throw std::domain_error("halving needs a positive expansion");
    if (cf.is_finite()) return cf_of_rational((eval_finite(cf) + Rational(1)) / Rational(2));
    if (cf.kind() == ContinuedFraction::Kind::Stream) {
        return ContinuedFraction::stream([cf] { return halve_plus1_stream(cf.digits()); });
    }
    const auto shifted = ContinuedFraction::periodic(cf.a0() + 1, cf.preperiod(), cf.period());
    return reciprocal_cf(double_cf(reciprocal_cf(shifted)));
}

std::vector<WindowCase> classify_windows(const ContinuedFraction& cf, std::size_t n_max) {
    std::vector<WindowCase> out;
    if (n_max == 0) return out;
    // par[i + 1] is q_i mod 2, par[0] is q_{-1} = 0.
    const std::vector<bool> par = denominator_parities(cf, n_max - 1);
    out.reserve(n_max);
    for (std::size_t n = 1; n <= n_max; ++n) {
        const bool q2_odd = par[n - 1];
        const bool q1_odd = par[n];
        if (!q2_odd) out.push_back(WindowCase::Fresh);
        else if (q1_odd) out.push_back(WindowCase::Decremented);
        else out.push_back(WindowCase::Skipped);
    }
    return out;
}

TrioResult trio(const QuadraticSurd& s, std::size_t n_max) {
    if (s.sign() <= 0) throw std::domain_error("trio needs a positive surd");
    const ContinuedFraction cf = expand_surd(s);
    TrioResult out;
    out.twice = double_cf(cf);
    out.half = halve_cf(cf);
    out.half_plus1 = halve_plus1_cf(cf);
    if (n_max < 2) return out;

    const bool a0_zero = sgn(cf.a0()) == 0;
    const auto shifted = ContinuedFraction::periodic(cf.a0() + 1, cf.preperiod(), cf.period());
    // Window n of alpha is window n + offset of each run.
    struct Run {
        DigitGenerator src;
        long offset;
        Doubler doubler{false};
    };
    std::array<Run, 3> runs{Run{cf.digits(), 0}, Run{reciprocal_cf(cf).digits(), a0_zero ? -1 : 1},
                            Run{reciprocal_cf(shifted).digits(), 1}};
    for (auto& run : runs) {
        const auto need = static_cast<std::size_t>(static_cast<long>(n_max) + run.offset);
        while (run.doubler.cases().size() < need) run.doubler.push(*run.src());
    }
    for (std::size_t n = 2; n <= n_max; ++n) {
        std::array<WindowCase, 3> row{};
        for (std::size_t r = 0; r < 3; ++r) {
            row[r] = *runs[r].doubler.case_at(static_cast<std::size_t>(static_cast<long>(n) + runs[r].offset));
        }
        if (row[0] == row[1] || row[0] == row[2] || row[1] == row[2]) out.distinct = false;
        out.annotations.push_back(row);
    }
    return out;
}

bool production_bounds_check(std::size_t n, long m) {
    const long nn = static_cast<long>(n);
    return (nn + 2) / 3 - 1 <= m && m <= 3 * nn - 1;
}

}  // namespace twolc
