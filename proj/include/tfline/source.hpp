#pragma once

#include <complex>
#include <string>
#include <vector>

namespace tfline {

/// Causal, bounded sending-end source w(t). w(t) = 0 for t < 0.
///
/// Three shapes are supported: the unit step, a scaled step, and a
/// piecewise-constant table. A table holds breakpoints t_0 < t_1 < ...
/// (t_0 >= 0) with values v_i; w(tau) is the value of the last breakpoint
/// at or before tau, and 0 before t_0. The last value holds forever.
class SourceSpec {
public:
    enum class Kind { UnitStep, ScaledStep, Table };

    static SourceSpec unit_step();
    static SourceSpec scaled_step(double amplitude);
    /// Throws ParameterError on empty, unsorted, negative-time or non-finite input.
    static SourceSpec table(std::vector<double> times, std::vector<double> values);

    Kind kind() const noexcept { return kind_; }
    double amplitude() const noexcept { return amplitude_; }
    const std::vector<double>& times() const noexcept { return times_; }
    const std::vector<double>& values() const noexcept { return values_; }

    double operator()(double tau) const noexcept;

    /// sup |w(t)| over t >= 0.
    double bound() const noexcept { return bound_; }

    /// Laplace transform W(s) for Re s > 0.
    std::complex<double> laplace(std::complex<double> s) const;

    std::string describe() const;

private:
    SourceSpec() = default;

    Kind kind_ = Kind::UnitStep;
    double amplitude_ = 1.0;
    std::vector<double> times_;
    std::vector<double> values_;
    double bound_ = 1.0;
};

}  // namespace tfline
