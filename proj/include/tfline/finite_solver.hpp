#pragma once

#include "tfline/line_params.hpp"
#include "tfline/source.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace tfline {

/// A finite line of length L driven through R_s and terminated in R_r.
struct FiniteLine {
    double length;
    LineParams params;
    double r_s;
    Resistance r_r;
};

enum class Direction { Forward, Backward };

/// One wave of the bounce diagram. Forward waves have made m round trips,
/// backward waves m round trips plus one receiving-end reflection.
struct ReflectionTerm {
    std::uint64_t m;
    Direction direction;
    double delay;        // arrival time of the wave front at x
    double attenuation;  // e^{-alpha * path}
    double coefficient;  // r_s^m r_r^m (forward) or r_s^m r_r^{m+1} (backward)
    double divider;      // Z0 / (Z0 + R_s)
};

struct ArrivalCounts {
    std::uint64_t forward = 0;
    std::uint64_t backward = 0;
    std::uint64_t total() const noexcept { return forward + backward; }
};

struct TermEnumeration {
    std::vector<ReflectionTerm> terms;  // ordered by delay, forward first on ties
    ArrivalCounts counts;
};

/// Time-domain bounce-diagram model of a distortionless or lossless line.
///
/// The response is the exact finite sum over the waves whose fronts have
/// reached x by time t; nothing is truncated by tolerance. Construction
/// throws RegimeError for GENERAL lines, whose Laplace terms are not
/// traveling waves.
class BounceModel {
public:
    explicit BounceModel(const FiniteLine& line);

    double length() const noexcept { return length_; }
    double speed() const noexcept { return u_; }
    double alpha() const noexcept { return alpha_; }
    double z0() const noexcept { return z0_; }
    double divider() const noexcept { return divider_; }
    ReflectionPair reflections() const noexcept { return refl_; }

    double forward_delay(std::uint64_t m, double x) const noexcept;
    double backward_delay(std::uint64_t m, double x) const noexcept;

    /// Number of forward/backward fronts with delay <= t at x.
    ArrivalCounts arrivals(double x, double t) const;

    TermEnumeration enumerate(double x, double t) const;

    /// v(x, t) for the given source.
    double voltage(double x, double t, const SourceSpec& source) const;

    /// Largest round-trip index whose forward term r_s^m r_r^m e^{-alpha path}
    /// is still nonzero in double precision; nullopt when terms never vanish
    /// (|r_s r_r| = 1 on a lossless line).
    std::optional<std::uint64_t> last_nonzero_round_trip(double x) const;

private:
    void check_point(double x, double t) const;

    double length_;
    double u_;
    double alpha_;
    double z0_;
    double divider_;
    ReflectionPair refl_;
};

TermEnumeration enumerate_terms(const FiniteLine& line, double x, double t);
double voltage_response(const FiniteLine& line, double x, double t, const SourceSpec& source);

struct LaplacePartialSum {
    std::complex<double> value;
    double last_pair_magnitude;  // |contribution of round trip m_max|
};

/// Partial sum of the Laplace-domain reflection series through round trip m_max.
/// Valid for every regime; throws DomainError when Re s <= 0.
LaplacePartialSum laplace_partial_sum(const FiniteLine& line, double x, std::complex<double> s,
                                      std::complex<double> source_transform, std::uint64_t m_max);

/// |r_s r_r e^{-2 gamma L}|, the ratio of the reflection series.
double convergence_ratio(const FiniteLine& line, std::complex<double> s);

/// Summed reflection series. Throws ConvergenceError when the ratio is >= 1.
std::complex<double> laplace_closed_form(const FiniteLine& line, double x, std::complex<double> s,
                                         std::complex<double> source_transform);

}  // namespace tfline
