#include "tfline/line_params.hpp"

#include "tfline/errors.hpp"

#include <algorithm>
#include <cmath>

namespace tfline {

std::string_view to_string(Regime regime) noexcept {
    switch (regime) {
        case Regime::Lossless: return "LOSSLESS";
        case Regime::Distortionless: return "DISTORTIONLESS";
        case Regime::General: return "GENERAL";
    }
    return "GENERAL";
}

Resistance::Resistance(double ohms) : ohms_(ohms) {
    if (!std::isfinite(ohms) || ohms < 0.0) {
        throw ParameterError("resistance must be finite and nonnegative (use Resistance::open())");
    }
}

double Resistance::ohms() const {
    if (!ohms_) {
        throw RegimeError("open circuit has no finite resistance");
    }
    return *ohms_;
}

namespace {

void check_params(double r, double l, double g, double c) {
    if (!(std::isfinite(r) && std::isfinite(l) && std::isfinite(g) && std::isfinite(c))) {
        throw ParameterError("line parameters must be finite");
    }
    if (!(l > 0.0) || !(c > 0.0)) {
        throw ParameterError("line parameters require l > 0 and c > 0");
    }
    if (r < 0.0 || g < 0.0) {
        throw ParameterError("line parameters require r >= 0 and g >= 0");
    }
}

// Relative tolerance for sigma == 0 when the inputs are not exact.
constexpr double kSigmaRelTol = 1e-12;

Regime classify(double r, double l, double g, double c) {
    if (r == 0.0 && g == 0.0) {
        return Regime::Lossless;
    }
    if (r > 0.0 && g > 0.0) {
        const double lhs = r * c;
        const double rhs = g * l;
        if (std::abs(lhs - rhs) <= kSigmaRelTol * std::max(std::abs(lhs), std::abs(rhs))) {
            return Regime::Distortionless;
        }
    }
    return Regime::General;
}

}  // namespace

LineParams::LineParams(double r, double l, double g, double c)
    : r_(r), l_(l), g_(g), c_(c), regime_(Regime::General) {
    check_params(r, l, g, c);
    regime_ = classify(r, l, g, c);
}

LineParams LineParams::from_rationals(const Rational& r, const Rational& l, const Rational& g,
                                      const Rational& c) {
    LineParams params(r.to_double(), l.to_double(), g.to_double(), c.to_double());
    if (r.num() == 0 && g.num() == 0) {
        params.regime_ = Regime::Lossless;
    } else if (r.num() > 0 && g.num() > 0 && ratio_equal(r, l, g, c)) {
        params.regime_ = Regime::Distortionless;
    } else {
        params.regime_ = Regime::General;
    }
    return params;
}

DerivedQuantities derived_quantities(const LineParams& p) {
    DerivedQuantities q{};
    q.regime = p.regime();
    const double rl = p.r() / p.l();
    const double gc = p.g() / p.c();
    q.delta = 0.5 * (rl + gc);
    q.sigma = 0.5 * (rl - gc);
    const double root_lc = std::sqrt(p.l() * p.c());
    q.u = 1.0 / root_lc;
    q.alpha = root_lc * q.delta;
    if (q.regime != Regime::General) {
        q.z0 = std::sqrt(p.l() / p.c());
    }
    return q;
}

double reflection_coefficient(const Resistance& termination, double z0) {
    if (!(z0 > 0.0)) {
        throw ParameterError("characteristic impedance must be positive");
    }
    if (termination.is_open()) {
        return 1.0;
    }
    const double r = termination.ohms();
    return (r - z0) / (r + z0);
}

ReflectionPair reflection_coefficients(double r_s, const Resistance& r_r, double z0) {
    return ReflectionPair{reflection_coefficient(Resistance(r_s), z0),
                          reflection_coefficient(r_r, z0)};
}

double source_divider(double r_s, double z0) {
    if (!(z0 > 0.0)) {
        throw ParameterError("characteristic impedance must be positive");
    }
    return z0 / (z0 + Resistance(r_s).ohms());
}

LaplaceLine laplace_gamma_z0(const LineParams& p, std::complex<double> s) {
    if (!(s.real() > 0.0)) {
        throw DomainError("Laplace variable requires Re s > 0");
    }
    const std::complex<double> series = p.l() * s + p.r();
    const std::complex<double> shunt = p.c() * s + p.g();
    return LaplaceLine{std::sqrt(series * shunt), std::sqrt(series / shunt)};
}

std::complex<double> reflection_coefficient(const Resistance& termination, std::complex<double> z0) {
    if (termination.is_open()) {
        return {1.0, 0.0};
    }
    const double r = termination.ohms();
    return (r - z0) / (r + z0);
}

std::complex<double> source_divider(double r_s, std::complex<double> z0) {
    return z0 / (z0 + Resistance(r_s).ohms());
}

}  // namespace tfline
