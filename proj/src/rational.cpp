#include "tfline/rational.hpp"

#include "tfline/errors.hpp"

#include <charconv>
#include <limits>
#include <numeric>

namespace tfline {

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) {
        throw ParameterError("rational with zero denominator");
    }
    if (den < 0) {
        if (num == std::numeric_limits<std::int64_t>::min() ||
            den == std::numeric_limits<std::int64_t>::min()) {
            throw ParameterError("rational overflow");
        }
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    num_ = num / (g == 0 ? 1 : g);
    den_ = den / (g == 0 ? 1 : g);
}

namespace {

std::optional<std::int64_t> parse_int(std::string_view text) {
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    if (text.empty()) {
        return std::nullopt;
    }
    std::int64_t value = 0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        return std::nullopt;
    }
    return value;
}

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        const __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

std::optional<Rational> Rational::parse(std::string_view text) {
    if (text.empty()) {
        return std::nullopt;
    }
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = parse_int(text.substr(0, slash));
        auto den = parse_int(text.substr(slash + 1));
        if (!num || !den || *den == 0) {
            return std::nullopt;
        }
        return Rational(*num, *den);
    }
    const auto dot = text.find('.');
    if (dot == std::string_view::npos) {
        auto num = parse_int(text);
        if (!num) {
            return std::nullopt;
        }
        return Rational(*num, 1);
    }
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = false;
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) {
        negative = whole.front() == '-';
        whole.remove_prefix(1);
    }
    if ((whole.empty() && frac.empty()) || frac.size() > 18) {
        return std::nullopt;
    }
    for (char ch : whole) {
        if (ch < '0' || ch > '9') return std::nullopt;
    }
    for (char ch : frac) {
        if (ch < '0' || ch > '9') return std::nullopt;
    }
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) {
        scale *= 10;
    }
    std::int64_t w = 0;
    std::int64_t f = 0;
    if (!whole.empty()) {
        auto parsed = parse_int(whole);
        if (!parsed) return std::nullopt;
        w = *parsed;
    }
    if (!frac.empty()) {
        auto parsed = parse_int(frac);
        if (!parsed) return std::nullopt;
        f = *parsed;
    }
    std::int64_t num = 0;
    if (__builtin_mul_overflow(w, scale, &num) || __builtin_add_overflow(num, f, &num)) {
        return std::nullopt;
    }
    return Rational(negative ? -num : num, scale);
}

std::string Rational::str() const {
    if (den_ == 1) {
        return std::to_string(num_);
    }
    return std::to_string(num_) + "/" + std::to_string(den_);
}

bool ratio_equal(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
    // (a/b) == (c/d)  <=>  a.n * b.d * c.d * d.n == c.n * d.d * a.d * b.n
    // Split into two 128-bit products of at most two 64-bit factors each.
    using i128 = __int128;
    const i128 lhs_1 = static_cast<i128>(a.num()) * b.den();
    const i128 lhs_2 = static_cast<i128>(c.den()) * d.num();
    const i128 rhs_1 = static_cast<i128>(c.num()) * d.den();
    const i128 rhs_2 = static_cast<i128>(a.den()) * b.num();
    // Compare lhs_1 * lhs_2 == rhs_1 * rhs_2 without overflowing: use division when nonzero.
    if (lhs_1 == 0 || lhs_2 == 0) {
        return rhs_1 == 0 || rhs_2 == 0;
    }
    if (rhs_1 == 0 || rhs_2 == 0) {
        return false;
    }
    // lhs_1 / rhs_1 == rhs_2 / lhs_2 as exact fractions.
    const i128 g1 = gcd128(lhs_1, rhs_1);
    const i128 g2 = gcd128(rhs_2, lhs_2);
    i128 p = lhs_1 / g1, q = rhs_1 / g1;
    i128 r = rhs_2 / g2, s = lhs_2 / g2;
    if (q < 0) { p = -p; q = -q; }
    if (s < 0) { r = -r; s = -s; }
    return p == r && q == s;
}

}  // namespace tfline
