#include "twolc/exclusion_search.hpp"

#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "twolc/cf_core.hpp"

namespace twolc {

std::string to_string(const Word& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(w[i]);
    }
    return out;
}

namespace {

void check_word(const Word& w, std::uint32_t C) {
    if (C < 1) throw std::invalid_argument("digit bound C must be >= 1");
    if (w.empty()) throw std::invalid_argument("prefix must be nonempty");
    for (auto d : w) {
        if (d < 1 || d > C) throw std::invalid_argument("prefix digit outside [1, C]");
    }
}

// p/q = [0; w, tail...]
void eval_tail(const Word& w, std::initializer_list<std::uint32_t> tail, Integer& p, Integer& q) {
    Integer h(1), k(0);
    auto step = [&](std::uint32_t d) {
        Integer nh = h * d;
        nh += k;
        k = std::move(h);
        h = std::move(nh);
    };
    for (auto it = std::rbegin(tail); it != std::rend(tail); ++it) step(*it);
    for (auto it = w.rbegin(); it != w.rend(); ++it) step(*it);
    // [0; x] = 1/x = k/h
    p = std::move(k);
    q = std::move(h);
}

// Lockstep Euclid on n1/d1 and n2/d2. The expansions are compared digit by
// digit and discarded once they diverge.
class PrefixKernel {
public:
    PrefixKernel() {
        for (mpz_ptr z : {n1_, d1_, n2_, d2_, q1_, q2_, r1_, r2_, last_}) mpz_init(z);
    }
    ~PrefixKernel() {
        for (mpz_ptr z : {n1_, d1_, n2_, d2_, q1_, q2_, r1_, r2_, last_}) mpz_clear(z);
    }
    PrefixKernel(const PrefixKernel&) = delete;
    PrefixKernel& operator=(const PrefixKernel&) = delete;

    struct Result {
        bool integer_parts_differ = false;
        std::size_t lim = 0;
        // First index in 1..lim whose shared digit exceeds C.
        std::size_t big_pos = 0;
        Integer big_digit;
        // Digit at lim + 1 (min of both) if both expansions have it.
        bool has_next = false;
        Integer next_min;
    };

    // With C = 0 every shared digit counts as big, which common_prefix_info
    // does not use; `shared` collects digits when non-null.
    Result run(const mpz_class& a_num, const mpz_class& a_den, const mpz_class& b_num,
               const mpz_class& b_den, std::uint32_t C, Digits* shared) {
        mpz_set(n1_, a_num.get_mpz_t());
        mpz_set(d1_, a_den.get_mpz_t());
        mpz_set(n2_, b_num.get_mpz_t());
        mpz_set(d2_, b_den.get_mpz_t());
        Result res;
        mpz_fdiv_qr(q1_, r1_, n1_, d1_);
        mpz_fdiv_qr(q2_, r2_, n2_, d2_);
        if (mpz_cmp(q1_, q2_) != 0) {
            res.integer_parts_differ = true;
            return res;
        }
        if (shared) shared->emplace_back(mpz_class(q1_));
        std::size_t i = 0;  // index of the last equal digit
        bool end1 = false, end2 = false;  // expansion ends at index i + 1 or earlier
        bool has1 = false, has2 = false;  // digit i + 1 exists
        std::size_t big_pos = 0;
        mpz_set(last_, q1_);
        while (true) {
            const bool done1 = mpz_sgn(r1_) == 0;
            const bool done2 = mpz_sgn(r2_) == 0;
            if (done1 || done2) {
                // one expansion ends exactly at index i
                has1 = !done1;
                has2 = !done2;
                end1 = end2 = true;
                if (has1 && has2) throw std::logic_error("inconsistent expansion end");
                if (has1) {
                    mpz_swap(n1_, d1_);
                    mpz_swap(d1_, r1_);
                    mpz_fdiv_qr(q1_, r1_, n1_, d1_);
                }
                if (has2) {
                    mpz_swap(n2_, d2_);
                    mpz_swap(d2_, r2_);
                    mpz_fdiv_qr(q2_, r2_, n2_, d2_);
                }
                break;
            }
            mpz_swap(n1_, d1_);
            mpz_swap(d1_, r1_);
            mpz_fdiv_qr(q1_, r1_, n1_, d1_);
            mpz_swap(n2_, d2_);
            mpz_swap(d2_, r2_);
            mpz_fdiv_qr(q2_, r2_, n2_, d2_);
            if (mpz_cmp(q1_, q2_) != 0) {
                has1 = has2 = true;
                end1 = mpz_sgn(r1_) == 0;
                end2 = mpz_sgn(r2_) == 0;
                break;
            }
            ++i;
            if (shared) shared->emplace_back(mpz_class(q1_));
            if (big_pos == 0 && mpz_cmp_ui(q1_, C) > 0) {
                big_pos = i;
                res.big_digit = mpz_class(q1_);
            }
            mpz_set(last_, q1_);
        }
        const std::size_t ell = i;
        const bool truncate = (end1 || end2) && ell > 0;
        res.lim = truncate ? ell - 1 : ell;
        if (big_pos != 0 && big_pos <= res.lim) res.big_pos = big_pos;
        if (shared && truncate) shared->pop_back();
        if (truncate) {
            // both expansions carry the dropped digit at position ell
            res.has_next = true;
            res.next_min = mpz_class(last_);
        } else if (has1 && has2) {
            res.has_next = true;
            res.next_min = mpz_cmp(q1_, q2_) < 0 ? mpz_class(q1_) : mpz_class(q2_);
        }
        return res;
    }

private:
    mpz_t n1_, d1_, n2_, d2_, q1_, q2_, r1_, r2_, last_;
};

PrefixKernel& kernel() {
    thread_local PrefixKernel k;
    return k;
}

}  // namespace

Interval interval_bounds(const Word& w, std::uint32_t C) {
    check_word(w, C);
    Integer p1, q1, p2, q2;
    // The digit at odd position n + 1 is maximal for the smaller endpoint.
    eval_tail(w, {C, 1, C, 1, C + 1}, p1, q1);
    eval_tail(w, {1, C, 1, C + 1}, p2, q2);
    Rational a(p1, q1), b(p2, q2);
    if (w.size() % 2 == 0) return {a, b};
    return {b, a};
}

PrefixInfo common_prefix_info(const Rational& x, const Rational& y) {
    if (x == y) throw std::invalid_argument("common_prefix_info needs distinct values");
    PrefixInfo out;
    const auto r = kernel().run(x.num(), x.den(), y.num(), y.den(), 0, &out.shared);
    if (r.integer_parts_differ) return out;
    if (r.has_next) out.next_min = r.next_min;
    return out;
}

std::string ExclusionWitness::str() const {
    std::ostringstream os;
    os << "w=" << to_string(prefix) << " k=" << k << " pos=" << position << " bound=" << bound.get_str();
    return os.str();
}

std::optional<ExclusionWitness> try_exclude(const Word& w, std::uint32_t C, unsigned k_cap) {
    check_word(w, C);
    if (k_cap < 1) throw std::invalid_argument("k_cap must be >= 1");
    Integer p1, q1, p2, q2;
    eval_tail(w, {C, 1, C, 1, C + 1}, p1, q1);
    eval_tail(w, {1, C, 1, C + 1}, p2, q2);
    PrefixKernel& ker = kernel();
    Integer n1, n2;
    for (unsigned k = 1; k <= k_cap; ++k) {
        mpz_mul_2exp(n1.get_mpz_t(), p1.get_mpz_t(), k);
        mpz_mul_2exp(n2.get_mpz_t(), p2.get_mpz_t(), k);
        auto r = ker.run(n1, q1, n2, q2, C, nullptr);
        if (r.integer_parts_differ) return std::nullopt;
        if (r.big_pos != 0) {
            return ExclusionWitness{w, k, r.big_pos, r.big_digit, ExclusionWitness::Kind::SharedDigit};
        }
        if (r.has_next && r.next_min > C) {
            return ExclusionWitness{w, k, r.lim + 1, r.next_min, ExclusionWitness::Kind::NextDigitMin};
        }
    }
    return std::nullopt;
}

std::string SearchReport::json() const {
    nlohmann::ordered_json j;
    j["C"] = C;
    j["terminated"] = terminated;
    j["K"] = K;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& d : depths) {
        arr.push_back({{"n", d.n}, {"frontier", d.frontier}, {"excluded", d.excluded}});
    }
    j["depths"] = std::move(arr);
    j["seconds"] = seconds;
    return j.dump();
}

bool SearchReport::same_result(const SearchReport& o) const {
    if (C != o.C || terminated != o.terminated || K != o.K || max_depth_reached != o.max_depth_reached)
        return false;
    if (depths.size() != o.depths.size() || witnesses.size() != o.witnesses.size()) return false;
    for (std::size_t i = 0; i < depths.size(); ++i) {
        if (depths[i].n != o.depths[i].n || depths[i].frontier != o.depths[i].frontier ||
            depths[i].excluded != o.depths[i].excluded)
            return false;
    }
    for (std::size_t i = 0; i < witnesses.size(); ++i) {
        if (witnesses[i].str() != o.witnesses[i].str()) return false;
    }
    return true;
}

SearchReport run_search(std::uint32_t C, const SearchOptions& opts) {
    if (C < 1) throw std::invalid_argument("digit bound C must be >= 1");
    const auto t0 = std::chrono::steady_clock::now();
    SearchReport rep;
    rep.C = C;
    std::vector<Word> frontier;
    for (std::uint32_t a = 1; a <= C; ++a) {
        for (std::uint32_t b = 1; b <= C; ++b) frontier.push_back({a, b});
    }
    const unsigned jobs = std::max(1u, opts.jobs);
    std::size_t depth = 2;
    while (!frontier.empty() && depth <= opts.max_depth) {
        std::vector<std::optional<ExclusionWitness>> results(frontier.size());
        std::atomic<std::size_t> cursor{0};
        constexpr std::size_t kBlock = 64;
        auto worker = [&] {
            while (true) {
                const std::size_t begin = cursor.fetch_add(kBlock);
                if (begin >= frontier.size()) break;
                const std::size_t end = std::min(frontier.size(), begin + kBlock);
                for (std::size_t i = begin; i < end; ++i) results[i] = try_exclude(frontier[i], C, opts.k_cap);
            }
        };
        if (jobs == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }
        DepthStats st{depth, frontier.size(), 0};
        std::vector<Word> next;
        for (std::size_t i = 0; i < frontier.size(); ++i) {
            if (results[i]) {
                ++st.excluded;
                rep.K = std::max(rep.K, results[i]->k);
                if (opts.keep_witnesses) rep.witnesses.push_back(std::move(*results[i]));
                continue;
            }
            for (std::uint32_t d = 1; d <= C; ++d) {
                Word child = frontier[i];
                child.push_back(d);
                next.push_back(std::move(child));
            }
        }
        rep.depths.push_back(st);
        rep.max_depth_reached = depth;
        frontier = std::move(next);
        ++depth;
    }
    rep.terminated = frontier.empty();
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

WitnessSearchExhausted::WitnessSearchExhausted(unsigned k_reached)
    : std::runtime_error("no large partial quotient found up to k = " + std::to_string(k_reached)),
      k_reached_(k_reached) {}

QWitness witness_q(const QuadraticSurd& s, const Rational& threshold, unsigned k_cap) {
    if (threshold.sign() <= 0 || threshold > Rational(1)) {
        throw std::invalid_argument("threshold must lie in (0, 1]");
    }
    // a_n >= 1 / threshold
    const Integer need = -floor_div(-threshold.den(), threshold.num());
    for (unsigned k = 0; k <= k_cap; ++k) {
        const QuadraticSurd t = times_pow2(s, k);
        const auto n = first_digit_at_least(t, need);
        if (!n) continue;
        Integer q_prev(0), q(1);
        auto gen = surd_digits(t);
        (void)gen();
        for (std::size_t i = 1; i < *n; ++i) {
            Integer nq = *gen() * q + q_prev;
            q_prev = std::move(q);
            q = std::move(nq);
        }
        const Integer digit = *gen();
        Integer pow;
        mpz_ui_pow_ui(pow.get_mpz_t(), 2, k);
        const Integer big_q = pow * q;
        Integer odd = big_q;
        mpz_tdiv_q_2exp(odd.get_mpz_t(), odd.get_mpz_t(), valuation2(odd));
        QWitness w{k, *n, digit, big_q,
                   scale(distance_to_nearest_integer(scale(s, Rational(big_q))), Rational(odd)),
                   Rational(odd, q * digit)};
        if (w.value.compare(threshold) >= 0 || w.value.compare(w.bound) >= 0) {
            throw std::logic_error("witness inequality failed");
        }
        return w;
    }
    throw WitnessSearchExhausted(k_cap);
}

}  // namespace twolc
