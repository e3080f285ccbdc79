#include "twolc/continued_fraction.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <ostream>
#include <sstream>

namespace twolc {

ParseError::ParseError(const std::string& what, std::size_t position)
    : std::invalid_argument(what + " at column " + std::to_string(position)), position_(position) {}

namespace {

void require_positive(const Digits& ds, const char* what) {
    for (const auto& d : ds) {
        if (sgn(d) <= 0) throw std::invalid_argument(std::string(what) + " digits must be >= 1");
    }
}

}  // namespace

Digits primitive_root(const Digits& period) {
    const std::size_t m = period.size();
    for (std::size_t p = 1; p < m; ++p) {
        if (m % p != 0) continue;
        bool ok = true;
        for (std::size_t i = p; i < m && ok; ++i) ok = period[i] == period[i - p];
        if (ok) return Digits(period.begin(), period.begin() + static_cast<std::ptrdiff_t>(p));
    }
    return period;
}

Digits least_rotation(const Digits& word) {
    const std::size_t n = word.size();
    if (n == 0) return word;
    std::size_t i = 0, j = 1, k = 0;
    while (i < n && j < n && k < n) {
        const int c = cmp(word[(i + k) % n], word[(j + k) % n]);
        if (c == 0) {
            ++k;
            continue;
        }
        if (c > 0) i += k + 1;
        else j += k + 1;
        if (i == j) ++j;
        k = 0;
    }
    const std::size_t start = std::min(i, j);
    Digits out;
    out.reserve(n);
    for (std::size_t t = 0; t < n; ++t) out.push_back(word[(start + t) % n]);
    return out;
}

ContinuedFraction ContinuedFraction::finite(Integer a0, Digits body) {
    require_positive(body, "continued fraction");
    if (!body.empty() && body.back() == 1) {
        body.pop_back();
        if (body.empty()) a0 += 1;
        else body.back() += 1;
    }
    return ContinuedFraction(std::move(a0), FiniteBody{std::move(body)});
}

ContinuedFraction ContinuedFraction::periodic(Integer a0, Digits preperiod, Digits period) {
    if (period.empty()) throw std::invalid_argument("period must be nonempty");
    require_positive(preperiod, "preperiod");
    require_positive(period, "period");
    period = primitive_root(period);
    while (!preperiod.empty() && preperiod.back() == period.back()) {
        preperiod.pop_back();
        std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
    }
    return ContinuedFraction(std::move(a0), PeriodicBody{std::move(preperiod), std::move(period)});
}

ContinuedFraction ContinuedFraction::stream(std::function<DigitGenerator()> factory) {
    if (!factory) throw std::invalid_argument("null stream factory");
    return ContinuedFraction(Integer(0), StreamBody{std::move(factory)});
}

ContinuedFraction::Kind ContinuedFraction::kind() const {
    switch (body_.index()) {
        case 0: return Kind::Finite;
        case 1: return Kind::Periodic;
        default: return Kind::Stream;
    }
}

Integer ContinuedFraction::a0() const {
    if (const auto* s = std::get_if<StreamBody>(&body_)) {
        auto gen = s->factory();
        auto d = gen();
        if (!d) throw std::runtime_error("digit source exhausted");
        return *d;
    }
    return a0_;
}

const Digits& ContinuedFraction::body() const {
    if (const auto* f = std::get_if<FiniteBody>(&body_)) return f->digits;
    throw std::logic_error("continued fraction body is not finite");
}

const Digits& ContinuedFraction::preperiod() const {
    if (const auto* p = std::get_if<PeriodicBody>(&body_)) return p->preperiod;
    throw std::logic_error("continued fraction is not eventually periodic");
}

const Digits& ContinuedFraction::period() const {
    if (const auto* p = std::get_if<PeriodicBody>(&body_)) return p->period;
    throw std::logic_error("continued fraction is not eventually periodic");
}

Integer ContinuedFraction::digit(std::size_t i) const {
    if (i == 0) return a0();
    if (const auto* f = std::get_if<FiniteBody>(&body_)) {
        if (i > f->digits.size()) throw std::out_of_range("index past end of finite expansion");
        return f->digits[i - 1];
    }
    if (const auto* p = std::get_if<PeriodicBody>(&body_)) {
        const std::size_t j = i - 1;
        if (j < p->preperiod.size()) return p->preperiod[j];
        return p->period[(j - p->preperiod.size()) % p->period.size()];
    }
    auto gen = std::get<StreamBody>(body_).factory();
    std::optional<Integer> d;
    for (std::size_t t = 0; t <= i; ++t) {
        d = gen();
        if (!d) throw std::out_of_range("digit source exhausted");
    }
    return *d;
}

DigitGenerator ContinuedFraction::digits() const {
    if (const auto* s = std::get_if<StreamBody>(&body_)) return s->factory();
    auto self = std::make_shared<const ContinuedFraction>(*this);
    auto index = std::make_shared<std::size_t>(0);
    return [self, index]() -> std::optional<Integer> {
        const std::size_t i = (*index)++;
        if (i == 0) return self->a0_;
        if (const auto* f = std::get_if<FiniteBody>(&self->body_)) {
            if (i > f->digits.size()) return std::nullopt;
            return f->digits[i - 1];
        }
        const auto& p = std::get<PeriodicBody>(self->body_);
        const std::size_t j = i - 1;
        if (j < p.preperiod.size()) return p.preperiod[j];
        return p.period[(j - p.preperiod.size()) % p.period.size()];
    };
}

Digits ContinuedFraction::take(std::size_t count) const {
    Digits out;
    auto gen = digits();
    while (out.size() < count) {
        auto d = gen();
        if (!d) break;
        out.push_back(std::move(*d));
    }
    return out;
}

Digits ContinuedFraction::least_period_rotation() const { return least_rotation(period()); }

namespace {

void join(std::ostringstream& os, const Digits& ds, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
        if (i != begin) os << ", ";
        os << ds[i].get_str();
    }
}

}  // namespace

std::string ContinuedFraction::str() const {
    std::ostringstream os;
    if (const auto* f = std::get_if<FiniteBody>(&body_)) {
        os << '[' << a0_.get_str();
        if (!f->digits.empty()) {
            os << "; ";
            join(os, f->digits, 0, f->digits.size());
        }
        os << ']';
        return os.str();
    }
    if (const auto* p = std::get_if<PeriodicBody>(&body_)) {
        // [(a0; p1, ..., p_{m-1})] when the integer part closes the period.
        if (p->preperiod.empty() && a0_ == p->period.back()) {
            os << "[(" << a0_.get_str();
            if (p->period.size() > 1) {
                os << "; ";
                join(os, p->period, 0, p->period.size() - 1);
            }
            os << ")]";
            return os.str();
        }
        os << '[' << a0_.get_str() << "; ";
        if (!p->preperiod.empty()) {
            join(os, p->preperiod, 0, p->preperiod.size());
            os << ", ";
        }
        os << '(';
        join(os, p->period, 0, p->period.size());
        os << ")]";
        return os.str();
    }
    return "[<stream>]";
}

bool operator==(const ContinuedFraction& a, const ContinuedFraction& b) {
    if (a.kind() != b.kind() || a.kind() == ContinuedFraction::Kind::Stream) return false;
    if (a.a0_ != b.a0_) return false;
    if (a.is_finite()) return a.body() == b.body();
    return a.preperiod() == b.preperiod() && a.period() == b.period();
}

std::ostream& operator<<(std::ostream& os, const ContinuedFraction& cf) { return os << cf.str(); }

namespace {

class CfParser {
public:
    explicit CfParser(std::string_view text) : s_(text) {}

    ContinuedFraction parse() {
        expect('[');
        skip_ws();
        if (peek() == '(') return parse_folded();
        Integer a0 = integer();
        skip_ws();
        if (peek() == ']') {
            ++pos_;
            finish();
            return ContinuedFraction::finite(std::move(a0));
        }
        expect(';');
        Digits pre;
        while (true) {
            skip_ws();
            if (peek() == '(') {
                ++pos_;
                Digits period = list_until(')');
                expect(']');
                finish();
                return ContinuedFraction::periodic(std::move(a0), std::move(pre), std::move(period));
            }
            pre.push_back(positive_digit());
            skip_ws();
            if (peek() == ',') {
                ++pos_;
                continue;
            }
            expect(']');
            finish();
            return ContinuedFraction::finite(std::move(a0), std::move(pre));
        }
    }

private:
    ContinuedFraction parse_folded() {
        ++pos_;
        skip_ws();
        Integer a0 = integer();
        if (sgn(a0) <= 0) fail("folded period needs a positive integer part", pos_);
        skip_ws();
        Digits rest;
        if (peek() == ';') {
            ++pos_;
            rest = list_until(')');
        } else {
            expect(')');
        }
        expect(']');
        finish();
        rest.push_back(a0);
        return ContinuedFraction::periodic(std::move(a0), {}, std::move(rest));
    }

    Digits list_until(char close) {
        Digits out;
        while (true) {
            out.push_back(positive_digit());
            skip_ws();
            if (peek() == ',') {
                ++pos_;
                continue;
            }
            expect(close);
            return out;
        }
    }

    Integer positive_digit() {
        skip_ws();
        const std::size_t at = pos_;
        Integer d = integer();
        if (sgn(d) <= 0) fail("partial quotient must be >= 1", at);
        return d;
    }

    Integer integer() {
        skip_ws();
        const std::size_t start = pos_;
        const bool negative = peek() == '-';
        if (peek() == '-' || peek() == '+') ++pos_;
        const std::size_t digits_start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == digits_start) fail("expected integer", start);
        Integer v(std::string(s_.substr(digits_start, pos_ - digits_start)), 10);
        return negative ? Integer(-v) : v;
    }

    void expect(char c) {
        skip_ws();
        if (peek() != c) fail(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    void finish() {
        skip_ws();
        if (pos_ != s_.size()) fail("trailing characters", pos_);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

    [[noreturn]] static void fail(const std::string& msg, std::size_t at) { throw ParseError(msg, at); }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

ContinuedFraction ContinuedFraction::parse(std::string_view text) { return CfParser(text).parse(); }

}  // namespace twolc
