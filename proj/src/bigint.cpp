#include "twolc/bigint.hpp"

#include <stdexcept>

namespace twolc {

Integer isqrt(const Integer& n) {
    if (sgn(n) < 0) throw std::domain_error("isqrt of a negative integer");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_perfect_square(const Integer& n) {
    return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

Integer floor_div(const Integer& a, const Integer& b) {
    if (sgn(b) == 0) throw std::domain_error("division by zero");
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

std::uint64_t valuation2(const Integer& n) {
    if (sgn(n) == 0) throw std::domain_error("2-adic valuation of zero");
    return mpz_scan1(n.get_mpz_t(), 0);
}

bool fits_int64(const Integer& n) {
    static_assert(sizeof(long) == sizeof(std::int64_t), "LP64 target expected");
    return mpz_fits_slong_p(n.get_mpz_t()) != 0;
}

std::int64_t to_int64(const Integer& n) {
    if (!fits_int64(n)) throw std::overflow_error("integer does not fit in 64 bits");
    return mpz_get_si(n.get_mpz_t());
}

std::string to_string(const Integer& n) { return n.get_str(); }

}  // namespace twolc
