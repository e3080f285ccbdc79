#include "twolc/cf_core.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

namespace twolc {

ContinuedFraction cf_of_rational(const Rational& r) {
    Integer n = r.num();
    Integer d = r.den();
    Integer a0 = floor_div(n, d);
    n -= a0 * d;
    Digits body;
    while (sgn(n) != 0) {
        // value is d / n > 1
        Integer q, rem;
        mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
        body.push_back(q);
        d = n;
        n = rem;
    }
    return ContinuedFraction::finite(std::move(a0), std::move(body));
}

Rational eval_digits(const Integer& a0, const Digits& body) {
    // Backward evaluation h/k of [d_i; d_{i+1}, ...].
    Integer h(1), k(0);
    for (auto it = body.rbegin(); it != body.rend(); ++it) {
        Integer nh = *it * h + k;
        k = h;
        h = std::move(nh);
    }
    // Value = a0 + k/h; an empty body leaves h = 1, k = 0.
    return Rational(a0 * h + k, h);
}

Rational eval_finite(const ContinuedFraction& cf) { return eval_digits(cf.a0(), cf.body()); }

std::vector<Convergent> convergents(const ContinuedFraction& cf, std::size_t n) {
    const Digits a = cf.take(n + 1);
    if (a.size() < n + 1) throw std::out_of_range("expansion has fewer digits than requested");
    std::vector<Convergent> out;
    out.reserve(n + 1);
    Integer p_prev(1), q_prev(0), p(a[0]), q(1);
    out.push_back({p, q, 0});
    for (std::size_t i = 1; i <= n; ++i) {
        Integer np = a[i] * p + p_prev;
        Integer nq = a[i] * q + q_prev;
        p_prev = std::move(p);
        q_prev = std::move(q);
        p = std::move(np);
        q = std::move(nq);
        out.push_back({p, q, i});
    }
    return out;
}

std::vector<bool> denominator_parities(const ContinuedFraction& cf, std::size_t n) {
    auto gen = cf.digits();
    if (!gen()) throw std::out_of_range("empty expansion");
    std::vector<bool> out{false, true};
    out.reserve(n + 2);
    bool prev = false, cur = true;
    for (std::size_t i = 1; i <= n; ++i) {
        auto d = gen();
        if (!d) throw std::out_of_range("expansion has fewer digits than requested");
        const bool odd = mpz_odd_p(d->get_mpz_t()) != 0;
        const bool next = (odd && cur) != prev;
        prev = cur;
        cur = next;
        out.push_back(cur);
    }
    return out;
}

namespace {

bool is_reduced(const Integer& R, const Integer& S, const Integer& r) {
    // (R + sqrt D)/S > 1 with conjugate in (-1, 0).
    return sgn(S) > 0 && R <= r && r < R + S && r >= S - R;
}

Integer digit_of(const Integer& R, const Integer& S, const Integer& r) {
    if (sgn(S) > 0) return floor_div(R + r, S);
    return -floor_div(R + r, Integer(-S)) - 1;
}

struct SmallState {
    std::int64_t R, S, digit;
};

using i128 = __int128;

constexpr std::int64_t kSmallLimit = std::int64_t(1) << 61;

i128 floor_div128(i128 a, i128 b) {
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

bool small_ok(i128 v) { return v > -kSmallLimit && v < kSmallLimit; }

// int64 kernel; returns false if any quantity leaves the safe range.
bool expand_small(std::int64_t R0, std::int64_t S0, std::int64_t D, std::int64_t r,
                  std::vector<SmallState>& states, std::size_t& cycle_start) {
    std::int64_t R = R0, S = S0;
    std::size_t start = SIZE_MAX;
    std::int64_t cR = 0, cS = 0;
    while (true) {
        if (start != SIZE_MAX && R == cR && S == cS) break;
        const bool reduced = S > 0 && R <= r && r < i128(R) + S && i128(r) >= i128(S) - R;
        if (start == SIZE_MAX && reduced) {
            start = states.size();
            cR = R;
            cS = S;
        }
        i128 a;
        if (S > 0) a = floor_div128(i128(R) + r, S);
        else a = -floor_div128(i128(R) + r, -i128(S)) - 1;
        if (!small_ok(a)) return false;
        states.push_back({R, S, static_cast<std::int64_t>(a)});
        const i128 nR = a * S - R;
        if (!small_ok(nR)) return false;
        const i128 num = i128(D) - nR * nR;
        const i128 nS = num / S;
        if (!small_ok(nS) || nS == 0) return false;
        R = static_cast<std::int64_t>(nR);
        S = static_cast<std::int64_t>(nS);
    }
    cycle_start = start;
    return true;
}

void expand_big(Integer R, Integer S, const Integer& D, const Integer& r,
                std::vector<SurdState>& states, std::size_t& cycle_start) {
    std::size_t start = SIZE_MAX;
    Integer cR, cS;
    while (true) {
        if (start != SIZE_MAX && R == cR && S == cS) break;
        if (start == SIZE_MAX && is_reduced(R, S, r)) {
            start = states.size();
            cR = R;
            cS = S;
        }
        Integer a = digit_of(R, S, r);
        Integer nR = a * S - R;
        Integer num = D - nR * nR;
        Integer nS;
        mpz_divexact(nS.get_mpz_t(), num.get_mpz_t(), S.get_mpz_t());
        states.push_back({std::move(R), std::move(S), std::move(a)});
        R = std::move(nR);
        S = std::move(nS);
    }
    cycle_start = start;
}

}  // namespace

SurdExpansion expand_surd_trace(const QuadraticSurd& s) {
    SurdExpansion out;
    out.D = s.D();
    const Integer r = isqrt(s.D());
    bool done = false;
    if (fits_int64(s.P()) && fits_int64(s.Q()) && fits_int64(s.D()) &&
        cmp(abs(s.P()), Integer(kSmallLimit)) < 0 && cmp(abs(s.Q()), Integer(kSmallLimit)) < 0 &&
        cmp(s.D(), Integer(kSmallLimit)) < 0) {
        std::vector<SmallState> small;
        std::size_t start = 0;
        if (expand_small(to_int64(s.P()), to_int64(s.Q()), to_int64(s.D()), to_int64(r), small,
                         start)) {
            out.states.reserve(small.size());
            for (const auto& st : small) {
                out.states.push_back({make_integer(st.R), make_integer(st.S), make_integer(st.digit)});
            }
            out.cycle_start = start;
            done = true;
        }
    }
    if (!done) {
        out.states.clear();
        expand_big(s.P(), s.Q(), s.D(), r, out.states, out.cycle_start);
    }

    const std::size_t c = out.cycle_start;
    const std::size_t m = out.states.size() - c;
    const Integer& a0 = out.states[0].digit;
    Digits pre, period;
    if (c == 0) {
        for (std::size_t i = 1; i < m; ++i) period.push_back(out.states[i].digit);
        period.push_back(a0);
    } else {
        for (std::size_t i = 1; i < c; ++i) pre.push_back(out.states[i].digit);
        for (std::size_t i = c; i < c + m; ++i) period.push_back(out.states[i].digit);
    }
    out.cf = ContinuedFraction::periodic(a0, std::move(pre), std::move(period));
    return out;
}

ContinuedFraction expand_surd(const QuadraticSurd& s) { return expand_surd_trace(s).cf; }

QuadraticSurd surd_of_periodic_cf(const ContinuedFraction& cf) {
    if (!cf.is_periodic()) throw std::invalid_argument("continued fraction is not eventually periodic");
    const Digits& period = cf.period();
    // y = [(p1; p2, ..., pm)] solves y = (h y + h') / (k y + k').
    Integer h(1), hp(0), k(0), kp(1);
    for (const auto& d : period) {
        Integer nh = d * h + hp;
        Integer nk = d * k + kp;
        hp = std::move(h);
        kp = std::move(k);
        h = std::move(nh);
        k = std::move(nk);
    }
    // k y^2 + (k' - h) y - h' = 0, y > 1 is the larger root.
    const QuadraticSurd y = QuadraticSurd::from_polynomial(k, kp - h, -hp, true);
    // x = [a0; pre, y] = (P y + P') / (Q y + Q').
    Integer P(1), Pp(0), Q(0), Qp(1);
    auto push = [&](const Integer& d) {
        Integer nP = d * P + Pp;
        Integer nQ = d * Q + Qp;
        Pp = std::move(P);
        Qp = std::move(Q);
        P = std::move(nP);
        Q = std::move(nQ);
    };
    push(cf.a0());
    for (const auto& d : cf.preperiod()) push(d);
    return linear_fractional(y, P, Pp, Q, Qp);
}

DigitGenerator surd_digits(const QuadraticSurd& s) {
    struct State {
        Integer R, S, D, r;
    };
    auto st = std::make_shared<State>(State{s.P(), s.Q(), s.D(), isqrt(s.D())});
    return [st]() -> std::optional<Integer> {
        Integer a = digit_of(st->R, st->S, st->r);
        Integer nR = a * st->S - st->R;
        Integer num = st->D - nR * nR;
        mpz_divexact(st->S.get_mpz_t(), num.get_mpz_t(), st->S.get_mpz_t());
        st->R = std::move(nR);
        return a;
    };
}

std::optional<std::size_t> first_digit_at_least(const QuadraticSurd& s, const Integer& bound) {
    const Integer r = isqrt(s.D());
    const Integer& D = s.D();
    Integer R = s.P(), S = s.Q();
    std::optional<std::pair<Integer, Integer>> cycle;
    std::size_t cycle_index = 0;
    for (std::size_t i = 0;; ++i) {
        if (cycle && cycle->first == R && cycle->second == S) {
            // A cycle starting at a0 has seen every digit except a0 as a body digit.
            if (cycle_index == 0 && digit_of(R, S, r) >= bound) return i;
            return std::nullopt;
        }
        if (!cycle && is_reduced(R, S, r)) {
            cycle.emplace(R, S);
            cycle_index = i;
        }
        Integer a = digit_of(R, S, r);
        if (i >= 1 && a >= bound) return i;
        Integer nR = a * S - R;
        Integer num = D - nR * nR;
        mpz_divexact(S.get_mpz_t(), num.get_mpz_t(), S.get_mpz_t());
        R = std::move(nR);
    }
}

bool is_purely_periodic(const QuadraticSurd& s) {
    return is_reduced(s.P(), s.Q(), isqrt(s.D()));
}

bool is_palindrome(const Digits& word) {
    return std::equal(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(word.size() / 2),
                      word.rbegin());
}

bool algebraic_integer_shape_check(const QuadraticSurd& s) {
    if (s.minimal_polynomial().A != 1) throw std::invalid_argument("surd is not an algebraic integer");
    const ContinuedFraction cf = expand_surd(s);
    if (!cf.preperiod().empty()) return false;
    const Digits& p = cf.period();
    const Digits inner(p.begin(), p.end() - 1);
    const Rational tail = Rational(2 * cf.a0()) - s.trace();
    return is_palindrome(inner) && tail == Rational(p.back());
}

}  // namespace twolc
