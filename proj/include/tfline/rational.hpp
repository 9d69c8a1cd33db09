#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tfline {

/// Exact rational p/q with q > 0 in lowest terms. Used to keep configuration
/// inputs exact until the point where a double is needed.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    /// Parses "p/q", an integer, or a plain decimal ("0.125", "-3.5").
    /// Returns nullopt for anything else, including exponent notation,
    /// which is not exactly representable in general.
    static std::optional<Rational> parse(std::string_view text);

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }
    double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string str() const;

    friend bool operator==(const Rational&, const Rational&) = default;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// Exact comparison a/b == c/d via 128-bit cross multiplication.
bool ratio_equal(const Rational& a, const Rational& b, const Rational& c, const Rational& d);

}  // namespace tfline
