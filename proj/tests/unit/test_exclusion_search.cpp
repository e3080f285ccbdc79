#include "doctest.h"

#include "twolc/cf_core.hpp"
#include "twolc/exclusion_search.hpp"
#include "test_support.hpp"

using namespace twolc;

namespace {

Digits to_digits(const Word& w) {
    Digits out;
    for (auto d : w) out.push_back(Integer(d));
    return out;
}

Rational eval_word(const Word& w, std::initializer_list<long> tail) {
    Digits body = to_digits(w);
    for (long t : tail) body.push_back(Integer(t));
    return eval_digits(0, body);
}

Word random_word(test::Rng& rng, std::size_t len, std::uint32_t C) {
    Word w;
    for (std::size_t i = 0; i < len; ++i) w.push_back(static_cast<std::uint32_t>(rng.range(1, C)));
    return w;
}

// [0; w, pre, (period)] with every digit in [1, C].
QuadraticSurd random_extension(test::Rng& rng, const Word& w, std::uint32_t C) {
    Digits pre = to_digits(w);
    for (auto& d : to_digits(random_word(rng, static_cast<std::size_t>(rng.range(0, 3)), C))) pre.push_back(d);
    return surd_of_periodic_cf(ContinuedFraction::periodic(
        0, pre, to_digits(random_word(rng, static_cast<std::size_t>(rng.range(1, 4)), C))));
}

}  // namespace

TEST_CASE("interval_bounds") {
    const auto even = interval_bounds({1, 1}, 2);
    CHECK(even.lo == eval_word({1, 1}, {2, 1, 2, 1, 3}));
    CHECK(even.hi == eval_word({1, 1}, {1, 2, 1, 3}));
    CHECK(even.lo < even.hi);
    const auto odd = interval_bounds({1, 1, 1}, 2);
    CHECK(odd.lo == eval_word({1, 1, 1}, {1, 2, 1, 3}));
    CHECK(odd.hi == eval_word({1, 1, 1}, {2, 1, 2, 1, 3}));
    CHECK(odd.lo < odd.hi);
    CHECK_THROWS_AS(interval_bounds({1, 3}, 2), std::invalid_argument);
    CHECK_THROWS_AS(interval_bounds({}, 2), std::invalid_argument);
    CHECK_THROWS_AS(interval_bounds({0, 1}, 2), std::invalid_argument);

    test::Rng rng(31);
    for (int t = 0; t < 100; ++t) {
        const std::uint32_t C = static_cast<std::uint32_t>(rng.range(1, 9));
        const Word w = random_word(rng, static_cast<std::size_t>(rng.range(1, 12)), C);
        const auto iv = interval_bounds(w, C);
        CHECK(iv.lo < iv.hi);
        for (int s = 0; s < 100; ++s) {
            Word ext = w;
            for (auto d : random_word(rng, 30, C)) ext.push_back(d);
            const Rational x = eval_word(ext, {});
            CHECK(iv.lo <= x);
            CHECK(x <= iv.hi);
        }
    }
}

TEST_CASE("interval bounds follow alternating digit order") {
    test::Rng rng(32);
    for (int t = 0; t < 300; ++t) {
        const std::uint32_t C = static_cast<std::uint32_t>(rng.range(2, 9));
        const Word w = random_word(rng, static_cast<std::size_t>(rng.range(1, 10)), C);
        const auto d1 = static_cast<std::uint32_t>(rng.range(1, C - 1));
        const auto d2 = static_cast<std::uint32_t>(rng.range(d1 + 1, C));
        Word a = w, b = w;
        a.push_back(d1);
        b.push_back(d2);
        const auto ia = interval_bounds(a, C), ib = interval_bounds(b, C);
        // a larger digit at an odd position lowers the value
        if (a.size() % 2 == 1) {
            CHECK(ib.hi <= ia.hi);
            CHECK(ib.lo <= ia.lo);
        } else {
            CHECK(ia.hi <= ib.hi);
            CHECK(ia.lo <= ib.lo);
        }
    }
}

TEST_CASE("common_prefix_info") {
    const auto p = common_prefix_info(Rational(17, 12), Rational(3, 2));
    CHECK(p.shared == Digits{1});
    REQUIRE(p.next_min.has_value());
    CHECK(*p.next_min == 2);

    const auto q = common_prefix_info(Rational(5, 2), Rational(7, 2));
    CHECK(q.shared.empty());
    CHECK_FALSE(q.next_min.has_value());

    // [0; 1, 2, 3, 4] vs [0; 1, 2, 3, 5, 6]: no expansion ends near the split
    const auto r = common_prefix_info(eval_digits(0, {1, 2, 3, 4, 7}), eval_digits(0, {1, 2, 3, 5, 6}));
    CHECK(r.shared == Digits{0, 1, 2, 3});
    CHECK(*r.next_min == 4);
    CHECK_THROWS_AS(common_prefix_info(Rational(1, 3), Rational(1, 3)), std::invalid_argument);

    // doubled endpoints of a real interval agree with doubled interior points
    const auto iv = interval_bounds({1, 1}, 2);
    const auto info = common_prefix_info(iv.lo * Rational(2), iv.hi * Rational(2));
    test::Rng rng(33);
    for (int s = 0; s < 100; ++s) {
        Word ext{1, 1};
        for (auto d : random_word(rng, 30, 2)) ext.push_back(d);
        const auto c = cf_of_rational(eval_word(ext, {}) * Rational(2));
        const Digits digits = c.take(info.shared.size() + 1);
        for (std::size_t i = 0; i < info.shared.size(); ++i) CHECK(digits[i] == info.shared[i]);
        if (info.next_min) CHECK(digits[info.shared.size()] >= *info.next_min);
    }
}

TEST_CASE("try_exclude") {
    const auto w = try_exclude({1, 1}, 1);
    REQUIRE(w.has_value());
    CHECK(w->k <= 1);
    CHECK(w->bound >= 2);
    CHECK(w->str().rfind("w=1,1 k=", 0) == 0);
    CHECK_THROWS_AS(try_exclude({1, 4}, 3), std::invalid_argument);
    CHECK_THROWS_AS(try_exclude({1, 1}, 3, 0), std::invalid_argument);
}

TEST_CASE("run_search reproduces the K row for small C") {
    const unsigned expected[] = {1, 2, 4, 6, 9, 16, 16, 28};
    for (std::uint32_t C = 1; C <= 8; ++C) {
        const auto rep = run_search(C);
        CHECK(rep.terminated);
        CHECK(rep.K == expected[C - 1]);
        CHECK(rep.depths.front().n == 2);
        CHECK(rep.depths.front().frontier == C * C);
    }
    SearchOptions capped;
    capped.max_depth = 3;
    const auto partial = run_search(6, capped);
    CHECK_FALSE(partial.terminated);
    CHECK(partial.max_depth_reached == 3);
    CHECK(partial.json().find("\"terminated\":false") != std::string::npos);
}

TEST_CASE("run_search is independent of the worker count") {
    SearchOptions one;
    one.keep_witnesses = true;
    SearchOptions many = one;
    many.jobs = 3;
    const auto a = run_search(5, one);
    const auto b = run_search(5, many);
    CHECK(a.same_result(b));
    CHECK(a.witnesses.size() > 0);
}

TEST_CASE("witnesses are sound on random surd extensions") {
    test::Rng rng(34);
    for (std::uint32_t C = 2; C <= 5; ++C) {
        SearchOptions o;
        o.keep_witnesses = true;
        const auto rep = run_search(C, o);
        std::size_t checked = 0;
        for (std::size_t i = 0; i < rep.witnesses.size(); i += 1 + rep.witnesses.size() / 40) {
            const auto& w = rep.witnesses[i];
            CHECK(w.bound > C);
            CHECK(w.k >= 1);
            for (int t = 0; t < 20; ++t) {
                const QuadraticSurd a = random_extension(rng, w.prefix, C);
                const Integer got = expand_surd(times_pow2(a, w.k)).digit(w.position);
                if (w.kind == ExclusionWitness::Kind::SharedDigit) CHECK(got == w.bound);
                else CHECK(got >= w.bound);
            }
            ++checked;
        }
        CHECK(checked > 0);
    }
}

TEST_CASE("witness_q") {
    const auto direct = witness_q(QuadraticSurd(0, 226, 1));
    CHECK(direct.k == 0);
    CHECK(direct.n == 1);
    CHECK(direct.q == 1);

    const QuadraticSurd alpha = QuadraticSurd::parse("(3 + sqrt(17))/2");
    const auto w = witness_q(alpha);
    CHECK(w.k >= 1);
    CHECK(w.digit >= 15);
    CHECK(w.value.compare(Rational(1, 15)) < 0);
    CHECK(w.bound <= Rational(1, 15));

    test::Rng rng(35);
    for (int t = 0; t < 100; ++t) {
        const QuadraticSurd s = test::random_surd(rng, 1000000);
        const auto x = witness_q(s);
        CHECK(x.k <= 59);
        CHECK(x.value.compare(Rational(1, 15)) < 0);
        CHECK(x.value.compare(x.bound) < 0);
        // floating check of q |q|_2 ||q s||
        mpf_class qs = test::oracle_value(s) * mpf_class(x.q, 4096);
        mpf_class near(0, 4096);
        mpf_floor(near.get_mpf_t(), mpf_class(qs + 0.5, 4096).get_mpf_t());
        Integer odd = x.q;
        mpz_tdiv_q_2exp(odd.get_mpz_t(), odd.get_mpz_t(), valuation2(odd));
        const double got = mpf_class(abs(qs - near) * mpf_class(odd, 4096)).get_d();
        CHECK(got == doctest::Approx(x.value.to_double()).epsilon(1e-9));
    }
    CHECK_THROWS_AS(witness_q(alpha, Rational(0)), std::invalid_argument);
    CHECK_THROWS_AS(witness_q(alpha, Rational(1, 15), 0), WitnessSearchExhausted);
}
