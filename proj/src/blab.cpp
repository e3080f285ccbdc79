#include "twolc/blab.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "twolc/cf_core.hpp"
#include "twolc/equivalence.hpp"

namespace twolc {

BMStats stats(const ContinuedFraction& cf) {
    if (!cf.is_periodic()) throw std::invalid_argument("B is defined here only for eventually periodic expansions");
    const Digits& pre = cf.preperiod();
    const Digits& per = cf.period();
    Integer B = *std::max_element(per.begin(), per.end());
    Integer M = B;
    for (const auto& d : pre) M = std::max(M, d);
    return {M, B};
}

BMStats stats(const QuadraticSurd& s) { return stats(expand_surd(s)); }

Integer m_lower_bound(const ContinuedFraction& cf, std::size_t n) {
    const Digits d = cf.take(n + 1);
    if (d.size() < 2) throw std::invalid_argument("need at least one digit after a0");
    return *std::max_element(d.begin() + 1, d.end());
}

LagrangeBounds lagrange_bounds(const BMStats& s) {
    if (s.M < 1 || s.B < 1) throw std::invalid_argument("M and B must be at least 1");
    return {Rational(Integer(1), s.M + 2), Rational(Integer(1), s.M), Rational(Integer(1), s.B + 2),
            Rational(Integer(1), s.B)};
}

namespace {

ClassKey key_of(std::initializer_list<long> word) {
    ClassKey k;
    for (long d : word) k.word.push_back(Integer(d));
    return k;
}

Integer period_max(const QuadraticSurd& s) { return stats(expand_surd(s)).B; }

template <typename F>
void parallel_for(std::size_t count, unsigned jobs, F&& body) {
    std::atomic<std::size_t> cursor{0};
    auto worker = [&] {
        for (std::size_t i; (i = cursor.fetch_add(1)) < count;) body(i);
    };
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < std::max(1u, jobs); ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
}

/// All words of length 0..n over digits 1..k.
std::vector<Digits> all_words(std::size_t n, unsigned k) {
    std::vector<Digits> out{{}};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= n; ++len) {
        const std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i) {
            for (unsigned d = 1; d <= k; ++d) {
                Digits w = out[i];
                w.push_back(Integer(d));
                out.push_back(std::move(w));
            }
        }
        begin = end;
    }
    return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

bool golden_doubling_check(const QuadraticSurd& s) {
    if (class_key(s) != key_of({1})) throw std::invalid_argument("input is not equivalent to [0; (1)]");
    return class_key(times2(s)) == key_of({4});
}

const char* to_string(B2Shape s) {
    switch (s) {
        case B2Shape::None: return "none";
        case B2Shape::Shape2: return "shape2";
        case B2Shape::Shape21: return "shape21";
    }
    return "?";
}

B2Shape b2_shape(const ContinuedFraction& cf) {
    if (!cf.is_periodic()) return B2Shape::None;
    const Digits& per = cf.period();
    std::size_t n = cf.preperiod().size();
    if (per == Digits{2}) {
        const auto par = denominator_parities(cf, n);
        // par[i + 1] is q_i mod 2
        return par[n + 1] && par[n] ? B2Shape::Shape2 : B2Shape::None;
    }
    if (per == Digits{2, 1} || per == Digits{1, 2}) {
        if (per.front() == 1) ++n;
        const auto par = denominator_parities(cf, n);
        return par[n] ? B2Shape::None : B2Shape::Shape21;
    }
    return B2Shape::None;
}

bool b2_characterization_holds(const QuadraticSurd& s) {
    const ContinuedFraction cf = expand_surd(s);
    const bool bounded = stats(cf).B <= 2 && period_max(times2(s)) <= 2;
    return bounded == (b2_shape(cf) != B2Shape::None);
}

std::vector<Digits> lyndon_words(std::size_t n, unsigned k) {
    if (n == 0 || k == 0) return {};
    std::vector<Digits> out;
    std::vector<unsigned> w{0};
    while (!w.empty()) {
        Digits d;
        for (unsigned x : w) d.push_back(Integer(x + 1));
        out.push_back(std::move(d));
        const std::size_t m = w.size();
        while (w.size() < n) w.push_back(w[w.size() - m]);
        while (!w.empty() && w.back() == k - 1) w.pop_back();
        if (!w.empty()) ++w.back();
    }
    return out;
}

B2Report b2_exhaustive(std::size_t period_max_len, std::size_t preperiod_max, unsigned jobs) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<Digits> periods;
    for (const auto& w : all_words(period_max_len, 2)) {
        if (!w.empty() && primitive_root(w).size() == w.size()) periods.push_back(w);
    }
    const std::vector<Digits> pres = all_words(preperiod_max, 2);

    struct Partial {
        std::size_t checked = 0, shape2 = 0, shape21 = 0;
        std::vector<ContinuedFraction> exceptions;
    };
    std::vector<Partial> parts(periods.size());
    parallel_for(periods.size(), jobs, [&](std::size_t i) {
        const Digits& per = periods[i];
        Partial& p = parts[i];
        for (const Digits& pre : pres) {
            // [.., x, (p1..pk)] with x = pk repeats a shorter presentation
            if (!pre.empty() && pre.back() == per.back()) continue;
            const ContinuedFraction written = ContinuedFraction::periodic(0, pre, per);
            const QuadraticSurd s = surd_of_periodic_cf(written);
            const ContinuedFraction cf = expand_surd(s);
            const B2Shape shape = b2_shape(cf);
            const bool bounded = stats(cf).B <= 2 && period_max(times2(s)) <= 2;
            ++p.checked;
            if (shape == B2Shape::Shape2) ++p.shape2;
            if (shape == B2Shape::Shape21) ++p.shape21;
            if (bounded != (shape != B2Shape::None)) p.exceptions.push_back(written);
        }
    });
    B2Report rep;
    for (auto& p : parts) {
        rep.checked += p.checked;
        rep.shape2 += p.shape2;
        rep.shape21 += p.shape21;
        for (auto& e : p.exceptions) rep.exceptions.push_back(std::move(e));
    }
    rep.seconds = seconds_since(t0);
    return rep;
}

std::string FalsifyCandidate::str() const {
    std::string out = x.str();
    for (const auto& [k, b] : b_values) out += " B(2^" + std::to_string(k) + ")=" + to_string(b);
    return out;
}

bool FalsifyReport::ok() const {
    return counterexamples.empty() &&
           std::all_of(whitelisted.begin(), whitelisted.end(), [](const WhitelistEntry& w) { return w.verified(); });
}

std::string FalsifyReport::json() const {
    nlohmann::ordered_json j;
    j["C"] = C;
    j["period_max"] = period_max;
    j["preperiod_max"] = preperiod_max;
    j["checked"] = checked;
    j["counterexamples"] = nlohmann::ordered_json::array();
    for (const auto& c : counterexamples) {
        nlohmann::ordered_json e;
        e["x"] = c.x.str();
        e["b_values"] = nlohmann::ordered_json::array();
        for (const auto& [k, b] : c.b_values) e["b_values"].push_back({{"k", k}, {"B", to_string(b)}});
        j["counterexamples"].push_back(e);
    }
    j["whitelisted"] = nlohmann::ordered_json::array();
    for (const auto& w : whitelisted) {
        j["whitelisted"].push_back(
            {{"x", w.x.str()}, {"k0", w.k0}, {"b_after", to_string(w.b_after)}, {"verified", w.verified()}});
    }
    j["ok"] = ok();
    j["seconds"] = seconds;
    return j.dump();
}

FalsifyReport falsify_bbound(unsigned C, std::size_t period_max_len, std::size_t preperiod_max, unsigned jobs) {
    if (C < 2 || C > 4) throw std::invalid_argument("C must be 2, 3 or 4");
    const auto t0 = std::chrono::steady_clock::now();
    const unsigned period_digits = C == 2 ? 3 : C;
    const unsigned pre_digits = C + 1;
    std::vector<Digits> periods;
    for (auto& w : lyndon_words(period_max_len, period_digits)) {
        if (C == 2 || *std::max_element(w.begin(), w.end()) == C) periods.push_back(std::move(w));
    }
    const std::vector<Digits> pres = all_words(preperiod_max, pre_digits);
    const ClassKey special = key_of({1, 1, 3});

    struct Partial {
        std::size_t checked = 0;
        std::vector<FalsifyCandidate> bad;
        std::vector<WhitelistEntry> white;
    };
    std::vector<Partial> parts(periods.size());
    parallel_for(periods.size(), jobs, [&](std::size_t i) {
        const Digits& per = periods[i];
        Partial& p = parts[i];
        for (const Digits& pre : pres) {
            if (per.size() == 1 && !pre.empty() && pre.back() == per.back()) continue;
            const ContinuedFraction x = ContinuedFraction::periodic(0, pre, per);
            const QuadraticSurd s = surd_of_periodic_cf(x);
            ++p.checked;
            FalsifyCandidate cand{x, {}};
            bool escaped = false;
            if (C == 2) {
                for (int k : {-1, 1}) {
                    const Integer b = period_max(k < 0 ? half(s) : times2(s));
                    cand.b_values.emplace_back(k, b);
                    if (b >= 3) {
                        escaped = true;
                        break;
                    }
                }
            } else {
                if (C == 3 && class_key(s) == special) {
                    // x = 4 alpha sits in the exceptional class; follow it until it leaves
                    QuadraticSurd cur = s;
                    unsigned k0 = 2;
                    while (class_key(times2(cur)) == special) {
                        if (k0 > 512) throw std::logic_error("doubling never left the [(3; 1, 1)] class");
                        cur = times2(cur);
                        ++k0;
                    }
                    p.white.push_back({x, k0, period_max(times2(cur))});
                    continue;
                }
                // 2^k alpha = 2^(k-2) x
                for (int k : {1, 3, 0, 4}) {
                    const QuadraticSurd y = k >= 2 ? times_pow2(s, static_cast<unsigned>(k - 2))
                                                   : scale(s, Rational(Integer(1), Integer(1) << (2 - k)));
                    const Integer b = period_max(y);
                    cand.b_values.emplace_back(k, b);
                    if (b > C) {
                        escaped = true;
                        break;
                    }
                }
            }
            if (!escaped) p.bad.push_back(std::move(cand));
        }
    });
    FalsifyReport rep;
    rep.C = C;
    rep.period_max = period_max_len;
    rep.preperiod_max = preperiod_max;
    for (auto& p : parts) {
        rep.checked += p.checked;
        for (auto& b : p.bad) rep.counterexamples.push_back(std::move(b));
        for (auto& w : p.white) rep.whitelisted.push_back(std::move(w));
    }
    rep.seconds = seconds_since(t0);
    return rep;
}

}  // namespace twolc
