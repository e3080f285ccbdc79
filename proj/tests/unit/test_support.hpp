#pragma once

#include <cstdint>
#include <gmpxx.h>

#include "twolc/bigint.hpp"
#include "twolc/continued_fraction.hpp"
#include "twolc/surd.hpp"

namespace twolc::test {

/// splitmix64; seeded and reproducible across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [lo, hi].
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next() % span);
    }

    bool coin() { return (next() & 1) != 0; }

private:
    std::uint64_t state_;
};

/// (P + sqrt D)/Q with 2 <= D <= d_max nonsquare, |P| <= 60, 1 <= |Q| <= 60.
inline QuadraticSurd random_surd(Rng& rng, std::int64_t d_max) {
    while (true) {
        const Integer D = make_integer(rng.range(2, d_max));
        if (is_perfect_square(D)) continue;
        const Integer P = make_integer(rng.range(-60, 60));
        Integer Q = make_integer(rng.range(1, 60));
        if (rng.coin()) Q = -Q;
        return QuadraticSurd(P, D, Q);
    }
}

inline mpf_class oracle_value(const QuadraticSurd& s, unsigned prec = 4096) {
    mpf_class x(s.D(), prec);
    x = sqrt(x);
    x += mpf_class(s.P(), prec);
    x /= mpf_class(s.Q(), prec);
    return x;
}

/// First n digits from a 4096-bit floating evaluation; independent of the
/// exact recurrence.
inline Digits oracle_digits(const QuadraticSurd& s, int n) {
    const unsigned prec = 4096;
    mpf_class x = oracle_value(s, prec);
    Digits out;
    for (int i = 0; i < n; ++i) {
        mpf_class f(0, prec);
        mpf_floor(f.get_mpf_t(), x.get_mpf_t());
        Integer a(f);
        out.push_back(a);
        x -= f;
        x = mpf_class(1, prec) / x;
    }
    return out;
}

}  // namespace twolc::test
