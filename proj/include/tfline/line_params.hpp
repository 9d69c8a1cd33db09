#pragma once

#include "tfline/rational.hpp"

#include <complex>
#include <optional>
#include <string_view>

namespace tfline {

enum class Regime { Lossless, Distortionless, General };

std::string_view to_string(Regime regime) noexcept;

/// A termination resistance on the extended half-line [0, inf].
/// The open circuit is a distinct state rather than a large number.
class Resistance {
public:
    /// Finite resistance in ohms; throws ParameterError for negative or non-finite values.
    explicit Resistance(double ohms);

    static Resistance open() noexcept { return Resistance(); }
    static Resistance shorted() noexcept { return Resistance(0.0); }

    bool is_open() const noexcept { return !ohms_.has_value(); }
    /// Throws RegimeError when called on an open circuit.
    double ohms() const;

    friend bool operator==(const Resistance&, const Resistance&) = default;

private:
    Resistance() = default;
    std::optional<double> ohms_;
};

/// Per-unit-length line constants.
class LineParams {
public:
    /// r, g >= 0; l, c > 0. Throws ParameterError otherwise.
    LineParams(double r, double l, double g, double c);

    /// Same as the double constructor, but the distortionless test
    /// r/l == g/c is decided exactly.
    static LineParams from_rationals(const Rational& r, const Rational& l, const Rational& g,
                                     const Rational& c);

    static LineParams lossless(double l, double c) { return LineParams(0.0, l, 0.0, c); }

    double r() const noexcept { return r_; }
    double l() const noexcept { return l_; }
    double g() const noexcept { return g_; }
    double c() const noexcept { return c_; }

    Regime regime() const noexcept { return regime_; }

private:
    double r_;
    double l_;
    double g_;
    double c_;
    Regime regime_;
};

struct DerivedQuantities {
    double delta;  // (r/l + g/c) / 2
    double sigma;  // (r/l - g/c) / 2
    double alpha;  // sqrt(lc) * delta, attenuation per unit length
    double u;      // propagation speed 1/sqrt(lc)
    std::optional<double> z0;  // real characteristic impedance, only without distortion
    Regime regime;
};

DerivedQuantities derived_quantities(const LineParams& params);

struct ReflectionPair {
    double sending;    // r_s in [-1, 1)
    double receiving;  // r_r in [-1, 1]
};

/// (R - Z0) / (R + Z0); exactly 1 for an open circuit.
double reflection_coefficient(const Resistance& termination, double z0);

/// Reflection coefficients for a real characteristic impedance z0 > 0.
ReflectionPair reflection_coefficients(double r_s, const Resistance& r_r, double z0);

/// Voltage divider Z0 / (Z0 + R_s) at the sending end.
double source_divider(double r_s, double z0);

struct LaplaceLine {
    std::complex<double> gamma;  // propagation constant, Re >= 0
    std::complex<double> z0;     // characteristic impedance, Re >= 0
};

/// gamma = sqrt((ls + r)(cs + g)), Z0 = sqrt((ls + r)/(cs + g)) on the principal branch.
/// Throws DomainError when Re s <= 0.
LaplaceLine laplace_gamma_z0(const LineParams& params, std::complex<double> s);

/// Complex-impedance variants used by the Laplace-domain solver.
std::complex<double> reflection_coefficient(const Resistance& termination, std::complex<double> z0);
std::complex<double> source_divider(double r_s, std::complex<double> z0);

}  // namespace tfline
