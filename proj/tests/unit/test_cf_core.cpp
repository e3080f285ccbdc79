#include "doctest.h"

#include "twolc/cf_core.hpp"
#include "twolc/continued_fraction.hpp"
#include "twolc/surd.hpp"
#include "test_support.hpp"

using namespace twolc;

namespace {

ContinuedFraction cf(const char* text) { return ContinuedFraction::parse(text); }
QuadraticSurd surd(const char* text) { return QuadraticSurd::parse(text); }

}  // namespace

TEST_CASE("cf_of_rational and eval_finite") {
    CHECK(cf_of_rational(Rational(17, 12)).str() == "[1; 2, 2, 2]");
    CHECK(cf_of_rational(Rational(5)).str() == "[5]");
    CHECK(cf_of_rational(Rational(1, 2)).str() == "[0; 2]");
    CHECK(cf_of_rational(Rational(-7, 3)).str() == "[-3; 1, 2]");
    CHECK(eval_finite(cf("[0; 2]")) == Rational(1, 2));
    CHECK(eval_finite(cf("[1; 2, 2, 2]")) == Rational(17, 12));
    // [0; 1, 1, 2, 1, 2, 1, 3] by back-substitution: 3 -> 4/3 -> 11/4 -> 15/11 -> 41/15
    // -> 56/41 -> 97/56, then 1/(97/56) = 56/97.
    CHECK(eval_finite(cf("[0; 1, 1, 2, 1, 2, 1, 3]")) == Rational(56, 97));
}

TEST_CASE("rational round trip on random fractions") {
    test::Rng rng(11);
    for (int i = 0; i < 500; ++i) {
        Rational r(make_integer(rng.range(-100000, 100000)), make_integer(rng.range(1, 100000)));
        const auto c = cf_of_rational(r);
        CHECK(eval_finite(c) == r);
        if (!c.body().empty()) CHECK(c.body().back() >= 2);
    }
}

TEST_CASE("convergents") {
    const auto fib = convergents(cf("[0; (1)]"), 5);
    const long qs[] = {1, 1, 2, 3, 5, 8};
    for (int i = 0; i <= 5; ++i) CHECK(fib[static_cast<std::size_t>(i)].q == qs[i]);
    const auto c = convergents(cf("[1; 2, 2, 2]"), 3);
    CHECK(c.back().p == 17);
    CHECK(c.back().q == 12);
    CHECK(c.back().index == 3);
    CHECK_THROWS_AS(convergents(cf("[1; 2]"), 4), std::out_of_range);

    test::Rng rng(5);
    for (int t = 0; t < 200; ++t) {
        Digits body;
        for (int i = 0; i < 30; ++i) body.push_back(make_integer(rng.range(1, 6)));
        body.push_back(2);
        const auto x = ContinuedFraction::finite(make_integer(rng.range(-3, 3)), body);
        const auto cv = convergents(x, 30);
        const auto par = denominator_parities(x, 30);
        for (std::size_t i = 1; i < cv.size(); ++i) {
            const Integer det = cv[i].p * cv[i - 1].q - cv[i - 1].p * cv[i].q;
            CHECK(abs(det) == 1);
            CHECK(gcd(cv[i].p, cv[i].q) == 1);
            CHECK_FALSE((mpz_even_p(cv[i].q.get_mpz_t()) && mpz_even_p(cv[i - 1].q.get_mpz_t())));
        }
        for (std::size_t i = 0; i < cv.size(); ++i) {
            CHECK(par[i + 1] == (mpz_odd_p(cv[i].q.get_mpz_t()) != 0));
        }
    }
}

TEST_CASE("expand_surd examples") {
    CHECK(expand_surd(surd("(-1 + sqrt(17))/8")).str() == "[0; 2, (1, 1, 3)]");
    const auto alpha = expand_surd(surd("(3 + sqrt(17))/2"));
    CHECK(alpha.str() == "[(3; 1, 1)]");
    CHECK(alpha.preperiod().empty());
    CHECK(expand_surd(surd("sqrt(2)")).str() == "[1; (2)]");
    CHECK(expand_surd(surd("3 + sqrt(17)")).str() == "[7; (8)]");
    CHECK(expand_surd(surd("(3 + sqrt(17))/4")).str() == "[(1; 1, 3)]");
    CHECK(expand_surd(surd("(1 + sqrt(5))/2")).str() == "[(1)]");
    CHECK(expand_surd(surd("(1 - sqrt(5))/2")).str() == "[-1; 2, (1)]");
}

TEST_CASE("expand_surd state trace") {
    const auto tr = expand_surd_trace(surd("(3 + sqrt(17))/2"));
    REQUIRE(tr.states.size() == 3);
    CHECK(tr.cycle_start == 0);
    const long expect[3][2] = {{3, 2}, {3, 4}, {1, 4}};
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(tr.states[i].R == expect[i][0]);
        CHECK(tr.states[i].S == expect[i][1]);
    }
    // D - R_i^2 = S_i S_{i-1}
    for (std::size_t i = 1; i < 3; ++i) {
        CHECK(tr.D - tr.states[i].R * tr.states[i].R == tr.states[i].S * tr.states[i - 1].S);
    }
}

TEST_CASE("surd_of_periodic_cf") {
    CHECK(surd_of_periodic_cf(cf("[(3; 1, 1)]")) == surd("(3 + sqrt(17))/2"));
    CHECK(surd_of_periodic_cf(cf("[0; (1)]")) == surd("(-1 + sqrt(5))/2"));
    CHECK(surd_of_periodic_cf(cf("[7; (8)]")) == times2(surd("(3 + sqrt(17))/2")));
    CHECK_THROWS_AS(surd_of_periodic_cf(cf("[1; 2]")), std::invalid_argument);
}

TEST_CASE("random surd expansion agrees with float oracle and round trips") {
    test::Rng rng(2024);
    for (int t = 0; t < 1000; ++t) {
        const QuadraticSurd s = test::random_surd(rng, 1000000);
        const auto e = expand_surd(s);
        CHECK(surd_of_periodic_cf(e) == s);
        const Digits lazy = [&] {
            Digits out;
            auto g = surd_digits(s);
            for (int i = 0; i < 40; ++i) out.push_back(*g());
            return out;
        }();
        CHECK(lazy == e.take(40));
        CHECK(lazy == test::oracle_digits(s, 40));
    }
}

TEST_CASE("big surds use the arbitrary-precision path") {
    // sqrt(n^2 + 1) = [n; (2n)] and sqrt(n^2 + 2) = [n; (n, 2n)] keep the
    // period short while every state overflows int64.
    const Integer n = Integer("1000000000000000000000000000037", 10);
    const QuadraticSurd s(Integer(3), n * n + 1, Integer(1));
    const auto e = expand_surd(s);
    CHECK(e.period() == Digits{2 * n});
    const auto e2 = expand_surd(QuadraticSurd(Integer(0), n * n + 2, Integer(1)));
    CHECK(e2.period() == Digits{n, 2 * n});
    CHECK(surd_of_periodic_cf(e) == s);
    CHECK(e.take(20) == test::oracle_digits(s, 20));
}

TEST_CASE("is_purely_periodic") {
    CHECK(is_purely_periodic(surd("(3 + sqrt(17))/2")));
    CHECK_FALSE(is_purely_periodic(surd("(-1 + sqrt(17))/8")));
    CHECK(is_purely_periodic(surd("(1 + sqrt(5))/2")));
    test::Rng rng(3);
    for (int t = 0; t < 300; ++t) {
        const QuadraticSurd s = test::random_surd(rng, 100000);
        const auto e = expand_surd(s);
        const bool pure = e.preperiod().empty() && e.a0() == e.period().back();
        CHECK(is_purely_periodic(s) == pure);
    }
}

TEST_CASE("minimal polynomial") {
    CHECK(surd("(3 + sqrt(17))/2").minimal_polynomial() == MinimalPolynomial{1, -3, -2});
    CHECK(surd("(5 + sqrt(33))/2").minimal_polynomial() == MinimalPolynomial{1, -5, -2});
    CHECK(surd("sqrt(2)").minimal_polynomial() == MinimalPolynomial{1, 0, -2});
    CHECK(half(surd("(3 + sqrt(17))/2")) == surd("(3 + sqrt(17))/4"));
    CHECK(expand_surd(half_plus1(surd("(3 + sqrt(17))/2"))).str() == "[2; (3, 1, 1)]");
}

TEST_CASE("algebraic integer shape") {
    CHECK(algebraic_integer_shape_check(surd("(3 + sqrt(17))/2")));
    CHECK(algebraic_integer_shape_check(surd("sqrt(2)")));
    CHECK(algebraic_integer_shape_check(surd("(5 + sqrt(33))/2")));
    CHECK_THROWS_AS(algebraic_integer_shape_check(surd("(3 + sqrt(17))/4")), std::invalid_argument);
    for (long D = 2; D < 400; ++D) {
        if (is_perfect_square(Integer(D))) continue;
        for (long P = -5; P <= 5; ++P) CHECK(algebraic_integer_shape_check(QuadraticSurd(P, D, 1)));
    }
}
