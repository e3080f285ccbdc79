#include "twolc/equivalence.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "twolc/cf_core.hpp"

namespace twolc {

Integer ClassKey::period_max() const {
    if (word.empty()) throw std::logic_error("empty class key");
    return *std::max_element(word.begin(), word.end());
}

std::string ClassKey::str() const {
    std::string out = "(";
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i) out += ", ";
        out += to_string(word[i]);
    }
    return out + ")";
}

ClassKey class_key(const ContinuedFraction& cf) {
    if (!cf.is_periodic()) throw std::invalid_argument("class keys need an eventually periodic expansion");
    return ClassKey{least_rotation(primitive_root(cf.period()))};
}

ClassKey class_key(const QuadraticSurd& s) { return class_key(expand_surd(s)); }

QuadraticSurd class_representative(const ClassKey& key) {
    if (key.word.empty()) throw std::invalid_argument("empty class key");
    Digits period(key.word.begin() + 1, key.word.end());
    period.push_back(key.word.front());
    return surd_of_periodic_cf(ContinuedFraction::periodic(key.word.front(), {}, std::move(period)));
}

bool equivalent(const QuadraticSurd& a, const QuadraticSurd& b) { return class_key(a) == class_key(b); }

namespace {

bool divides(const Integer& d, const Integer& n) { return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0; }

}  // namespace

std::optional<Certificate> affine_certificate(const QuadraticSurd& s, const Integer& u, const Integer& v,
                                              const Integer& w, const Integer& l_bound,
                                              const Integer& d_bound) {
    if (sgn(u) == 0 || sgn(w) == 0) throw std::invalid_argument("u and w must be nonzero");
    const auto& poly = s.minimal_polynomial();
    const Integer& A = poly.A;
    const Integer& B = poly.B;
    const Integer& C = poly.C;
    const Integer disc = poly.discriminant();
    for (Integer mag = 1; mag <= l_bound; ++mag) {
        for (int sign : {1, -1}) {
            const Integer l = sign * mag;
            if (!divides(u, l * A)) continue;
            const Integer c = l * A / u;
            // u d^2 - l B d + l C c = t w with t = +-1
            std::vector<Integer> ds;
            for (int t : {1, -1}) {
                const Integer rad = l * l * disc + 4 * t * u * w;
                if (sgn(rad) < 0 || !is_perfect_square(rad)) continue;
                const Integer sq = isqrt(rad);
                for (const Integer& num : {Integer(l * B + sq), Integer(l * B - sq)}) {
                    if (divides(2 * u, num)) ds.push_back(num / (2 * u));
                }
            }
            std::sort(ds.begin(), ds.end());
            ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
            for (const Integer& d : ds) {
                if (abs(d) > d_bound) continue;
                const Integer bn = v * d - l * C;
                const Integer an = u * d + v * c - l * B;
                if (!divides(w, bn) || !divides(w, an)) continue;
                const Integer b = bn / w;
                const Integer a = an / w;
                const Integer det = a * d - b * c;
                if (det != 1 && det != -1) continue;
                return Certificate{a, b, c, d, l};
            }
        }
    }
    return std::nullopt;
}

std::optional<Certificate> m_equiv_certificate(const QuadraticSurd& s, const Rational& m,
                                               const Integer& l_bound, const Integer& d_bound) {
    if (m.sign() == 0) throw std::invalid_argument("multiplier must be nonzero");
    return affine_certificate(s, m.num(), 0, m.den(), l_bound, d_bound);
}

const char* to_string(Image i) {
    switch (i) {
        case Image::Double: return "double";
        case Image::Half: return "half";
        case Image::HalfPlus1: return "half_plus1";
    }
    return "?";
}

bool self_similar_check(const QuadraticSurd& s) {
    const ClassKey k = class_key(s);
    return class_key(half(s)) == k && class_key(half_plus1(s)) == k;
}

std::vector<Image> two_of_three(const QuadraticSurd& beta, const QuadraticSurd& alpha) {
    if (!self_similar_check(alpha)) throw std::invalid_argument("alpha is not self-similar");
    const ClassKey target = class_key(alpha);
    if (class_key(beta) != target) throw std::invalid_argument("beta is not in the class of alpha");
    std::vector<Image> out;
    if (class_key(times2(beta)) == target) out.push_back(Image::Double);
    if (class_key(half(beta)) == target) out.push_back(Image::Half);
    if (class_key(half_plus1(beta)) == target) out.push_back(Image::HalfPlus1);
    return out;
}

bool ChainResult::verified() const {
    return checks.size() == K + 1 &&
           std::all_of(checks.begin(), checks.end(), [&](const ClassKey& c) { return c == target; });
}

ChainResult build_chain(const QuadraticSurd& alpha, std::size_t K) {
    if (!self_similar_check(alpha)) throw std::invalid_argument("alpha is not self-similar");
    const ClassKey target = class_key(alpha);
    QuadraticSurd cur = alpha;
    std::vector<Image> steps;
    for (std::size_t j = 0; j < K; ++j) {
        QuadraticSurd h = half(cur);
        QuadraticSurd hp = half_plus1(cur);
        const bool eh = class_key(h) == target;
        const bool ehp = class_key(hp) == target;
        // After the first descent 2 * cur is already in the class, so only one halving can be.
        if (eh && ehp && j > 0) throw std::logic_error("both halvings stay in the class");
        if (eh) {
            cur = std::move(h);
            steps.push_back(Image::Half);
        } else if (ehp) {
            cur = std::move(hp);
            steps.push_back(Image::HalfPlus1);
        } else {
            throw std::logic_error("no halving stays in the class");
        }
    }
    ChainResult out{cur, K, target, {}, std::move(steps)};
    for (std::size_t k = 0; k <= K; ++k) out.checks.push_back(class_key(times_pow2(cur, static_cast<unsigned>(k))));
    return out;
}

QuadraticSurd family_member(const Integer& m) {
    if (m < 3 || mpz_even_p(m.get_mpz_t())) throw std::invalid_argument("m must be odd and at least 3");
    return QuadraticSurd::from_polynomial(1, -m, -2, true);
}

QuadraticSurd alpha_mK(const Integer& m, std::size_t K) { return build_chain(family_member(m), K).beta; }

QuadraticSurd ScanHit::surd() const { return QuadraticSurd(make_integer(P), make_integer(D), make_integer(Q)); }

namespace {

using Word64 = std::vector<std::int64_t>;

std::int64_t floor_div64(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t isqrt64(std::int64_t n) {
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

struct Walker {
    std::int64_t D, r;

    bool reduced(std::int64_t R, std::int64_t S) const {
        return S > 0 && R <= r && r < R + S && r >= S - R;
    }
    std::int64_t digit(std::int64_t R, std::int64_t S) const {
        return S > 0 ? floor_div64(R + r, S) : -floor_div64(R + r, -S) - 1;
    }
    void step(std::int64_t& R, std::int64_t& S) const {
        const std::int64_t a = digit(R, S);
        const std::int64_t nR = a * S - R;
        S = (D - nR * nR) / S;
        R = nR;
    }
    /// Advances (R, S) to its first reduced state.
    void to_cycle(std::int64_t& R, std::int64_t& S) const {
        while (!reduced(R, S)) step(R, S);
    }
};

Word64 least_rotation64(const Word64& w) {
    Word64 best = w;
    Word64 cur = w;
    for (std::size_t i = 1; i < w.size(); ++i) {
        std::rotate(cur.begin(), cur.begin() + 1, cur.end());
        if (cur < best) best = cur;
    }
    return best;
}

/// Reduced cycles of one radicand, each registered once with its class word.
class CycleIndex {
public:
    explicit CycleIndex(std::int64_t D) : wk_{D, isqrt64(D)} {}

    /// Class word of (P + sqrt D)/Q with Q | D - P^2.
    const Word64& word(std::int64_t P, std::int64_t Q) {
        wk_.to_cycle(P, Q);
        const auto it = ids_.find(key(P, Q));
        if (it != ids_.end()) return words_[it->second];
        Word64 w;
        std::int64_t R = P, S = Q;
        do {
            ids_.emplace(key(R, S), words_.size());
            w.push_back(wk_.digit(R, S));
            wk_.step(R, S);
        } while (R != P || S != Q);
        words_.push_back(least_rotation64(w));
        return words_.back();
    }

private:
    std::uint64_t key(std::int64_t R, std::int64_t S) const {
        return static_cast<std::uint64_t>(R + wk_.r) * static_cast<std::uint64_t>(2 * wk_.r + 2) +
               static_cast<std::uint64_t>(S);
    }

    Walker wk_;
    std::unordered_map<std::uint64_t, std::size_t> ids_;
    std::deque<Word64> words_;
};

std::vector<ScanHit> scan_one(std::int64_t D, std::int64_t q_max) {
    std::vector<ScanHit> hits;
    const std::int64_t r = isqrt64(D);
    if (r * r == D) return hits;
    CycleIndex base(D), quad(4 * D);
    std::set<Word64> found;
    for (std::int64_t Q = 1; Q <= q_max; ++Q) {
        for (std::int64_t P = 0; P < Q; ++P) {
            if ((D - P * P) % Q != 0) continue;
            const Word64& k = base.word(P, Q);
            if (found.count(k)) continue;
            // s/2 = (2P + sqrt 4D)/4Q and (s+1)/2 = (2(P+Q) + sqrt 4D)/4Q
            if (quad.word(2 * P, 4 * Q) != k || quad.word(2 * (P + Q), 4 * Q) != k) continue;
            found.insert(k);
            ScanHit h{D, Q, P, {}};
            for (auto d : k) h.key.word.push_back(make_integer(d));
            hits.push_back(std::move(h));
        }
    }
    return hits;
}

}  // namespace

std::vector<ScanHit> scan_self_similar(const ScanOptions& opts) {
    const std::int64_t limit = std::int64_t(1) << 40;
    if (opts.d_min < 2 || opts.d_max > limit || opts.d_min > opts.d_max) {
        throw std::invalid_argument("D range must lie in [2, 2^40]");
    }
    if (opts.q_max < 1 || opts.q_max > (std::int64_t(1) << 24)) {
        throw std::invalid_argument("q_max must lie in [1, 2^24]");
    }
    const auto count = static_cast<std::size_t>(opts.d_max - opts.d_min + 1);
    std::vector<std::vector<ScanHit>> per_d(count);
    std::atomic<std::size_t> cursor{0};
    constexpr std::size_t kBlock = 16;
    auto worker = [&] {
        while (true) {
            const std::size_t start = cursor.fetch_add(kBlock);
            if (start >= count) return;
            const std::size_t end = std::min(count, start + kBlock);
            for (std::size_t i = start; i < end; ++i) {
                per_d[i] = scan_one(opts.d_min + static_cast<std::int64_t>(i), opts.q_max);
            }
        }
    };
    const unsigned jobs = std::max(1u, opts.jobs);
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::vector<ScanHit> out;
    std::set<ClassKey> seen;
    for (auto& hits : per_d) {
        for (auto& h : hits) {
            if (seen.insert(h.key).second) out.push_back(std::move(h));
        }
    }
    return out;
}

std::string scan_csv(const std::vector<ScanHit>& hits) {
    std::ostringstream os;
    os << "D,Q,P,period_len,period_max,class_key\n";
    for (const auto& h : hits) {
        os << h.D << ',' << h.Q << ',' << h.P << ',' << h.key.period_length() << ',' << h.key.period_max()
           << ",\"" << h.key.str() << "\"\n";
    }
    return os.str();
}

}  // namespace twolc
