#include "doctest.h"

#include <algorithm>
#include <set>

#include "twolc/blab.hpp"
#include "twolc/cf_core.hpp"
#include "twolc/equivalence.hpp"
#include "twolc/hurwitz.hpp"
#include "test_support.hpp"

using namespace twolc;

namespace {

ContinuedFraction cf(const char* text) { return ContinuedFraction::parse(text); }

ContinuedFraction random_periodic(test::Rng& rng, unsigned max_digit) {
    Digits pre, per;
    for (auto i = rng.range(0, 5); i > 0; --i) pre.push_back(make_integer(rng.range(1, max_digit)));
    for (auto i = rng.range(1, 6); i > 0; --i) per.push_back(make_integer(rng.range(1, max_digit)));
    return ContinuedFraction::periodic(make_integer(rng.range(0, 5)), pre, per);
}

// B(2x) by the sliding-window transducer, an independent path from surd arithmetic.
Integer doubled_b(const ContinuedFraction& x) { return stats(double_cf(x)).B; }

}  // namespace

TEST_CASE("stats") {
    const auto a = stats(cf("[(3; 1, 1)]"));
    CHECK(a.B == 3);
    CHECK(a.M == 3);
    const auto b = stats(cf("[7; (8)]"));
    CHECK(b.B == 8);
    CHECK(b.M == 8);
    const auto c = stats(cf("[0; 2, (1, 1, 3)]"));
    CHECK(c.B == 3);
    CHECK(c.M == 3);
    CHECK(stats(cf("[0; 9, (1, 2)]")).M == 9);
    CHECK(stats(cf("[0; 9, (1, 2)]")).B == 2);
    CHECK_THROWS_AS(stats(cf("[1; 2, 3]")), std::invalid_argument);

    test::Rng rng(51);
    for (int t = 0; t < 300; ++t) {
        const ContinuedFraction x = random_periodic(rng, 20);
        const auto s = stats(x);
        CHECK(s.B <= s.M);
        const Digits d = x.take(501);
        CHECK(s.M == *std::max_element(d.begin() + 1, d.end()));
        const std::size_t skip = 1 + x.preperiod().size();
        CHECK(s.B == *std::max_element(d.begin() + static_cast<std::ptrdiff_t>(skip), d.end()));
        CHECK(m_lower_bound(x, 500) == s.M);
        if (x.preperiod().empty()) CHECK(s.B == s.M);
    }
}

TEST_CASE("lagrange_bounds") {
    const auto m3 = lagrange_bounds({3, 3});
    CHECK(m3.m_lo == Rational(1, 5));
    CHECK(m3.m_hi == Rational(1, 3));
    const auto b8 = lagrange_bounds({8, 8});
    CHECK(b8.c_lo == Rational(1, 10));
    CHECK(b8.c_hi == Rational(1, 8));
    const auto g = lagrange_bounds({1, 1});
    CHECK(g.m_lo == Rational(1, 3));
    CHECK(g.m_hi == Rational(1));
    CHECK_THROWS_AS(lagrange_bounds({0, 1}), std::invalid_argument);
}

TEST_CASE("golden_doubling_check") {
    CHECK(golden_doubling_check(QuadraticSurd::parse("(-1 + sqrt(5))/2")));
    CHECK(golden_doubling_check(QuadraticSurd::parse("(1 + sqrt(5))/2")));
    CHECK_THROWS_AS(golden_doubling_check(QuadraticSurd::parse("sqrt(2)")), std::invalid_argument);
    test::Rng rng(52);
    const QuadraticSurd g = QuadraticSurd::parse("(1 + sqrt(5))/2");
    for (int t = 0; t < 100; ++t) {
        Integer a, b, c, d;
        do {
            a = make_integer(rng.range(-10, 10));
            b = make_integer(rng.range(-10, 10));
            c = make_integer(rng.range(-10, 10));
            d = make_integer(rng.range(-10, 10));
        } while (a * d - b * c != 1 && a * d - b * c != -1);
        CHECK(golden_doubling_check(linear_fractional(g, a, b, c, d)));
    }
}

TEST_CASE("b2_shape") {
    CHECK(b2_shape(cf("[0; 1, (2)]")) == B2Shape::Shape2);
    CHECK(b2_shape(cf("[1; (2)]")) == B2Shape::None);
    CHECK(b2_shape(cf("[(1)]")) == B2Shape::None);
    CHECK(b2_shape(cf("[0; (2, 1)]")) == B2Shape::Shape21);
    CHECK(b2_shape(cf("[0; 1, (2, 1)]")) == B2Shape::None);
    CHECK(b2_shape(cf("[0; 2, 1, (2, 1)]")) == B2Shape::Shape21);

    const QuadraticSurd r2 = QuadraticSurd::parse("sqrt(2)");
    CHECK(stats(r2).B == 2);
    CHECK(expand_surd(times2(r2)) == cf("[2; (1, 4)]"));
    CHECK(b2_characterization_holds(r2));
    CHECK(b2_characterization_holds(QuadraticSurd::parse("sqrt(2)/2")));
    CHECK(expand_surd(times2(QuadraticSurd::parse("sqrt(2)/2"))) == cf("[1; (2)]"));
    const QuadraticSurd g = QuadraticSurd::parse("(-1 + sqrt(5))/2");
    CHECK(b2_characterization_holds(g));
    CHECK(b2_shape(expand_surd(g)) == B2Shape::None);
}

TEST_CASE("B <= 2 biconditional on a small exhaustive range") {
    const auto rep = b2_exhaustive(7, 4, 2);
    CHECK(rep.ok());
    CHECK(rep.checked > 1000);
    CHECK(rep.shape2 > 0);
    CHECK(rep.shape21 > 0);
}

TEST_CASE("b_values agree with the transducer") {
    test::Rng rng(53);
    for (int t = 0; t < 200; ++t) {
        const ContinuedFraction x = random_periodic(rng, 4);
        const QuadraticSurd s = surd_of_periodic_cf(x);
        CHECK(stats(times2(s)).B == doubled_b(x));
    }
}

TEST_CASE("lyndon_words") {
    const auto w = lyndon_words(4, 2);
    // 1, 1112, 112, 1122, 12, 122, 1222, 2
    CHECK(w.size() == 8);
    CHECK(w.front() == Digits{1});
    CHECK(w.back() == Digits{2});
    CHECK(lyndon_words(8, 3).size() == 3 + 3 + 8 + 18 + 48 + 116 + 312 + 810);
    for (const auto& x : lyndon_words(6, 3)) {
        CHECK(primitive_root(x).size() == x.size());
        CHECK(least_rotation(x) == x);
    }
}

TEST_CASE("falsifiers") {
    const auto r2 = falsify_bbound(2, 6, 2);
    CHECK(r2.ok());
    CHECK(r2.checked > 0);
    const auto r3 = falsify_bbound(3, 6, 2);
    CHECK(r3.counterexamples.empty());
    REQUIRE_FALSE(r3.whitelisted.empty());
    for (const auto& w : r3.whitelisted) {
        CHECK(w.k0 >= 2);
        CHECK(w.b_after == 8);
    }
    CHECK(r3.ok());
    const auto r4 = falsify_bbound(4, 4, 1);
    CHECK(r4.ok());
    CHECK(r4.json().find("\"ok\":true") != std::string::npos);
    CHECK_THROWS_AS(falsify_bbound(5, 3, 1), std::invalid_argument);
}

TEST_CASE("period-5 fixtures are self-similar") {
    CHECK(self_similar_check(surd_of_periodic_cf(cf("[(5; 2, 1, 2)]"))));
    const QuadraticSurd b = surd_of_periodic_cf(cf("[(5; 1, 2, 2, 1)]"));
    CHECK(self_similar_check(b));
    CHECK(b.minimal_polynomial() == MinimalPolynomial{1, -5, -4});
}
