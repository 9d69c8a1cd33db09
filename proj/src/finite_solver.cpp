#include "tfline/finite_solver.hpp"

#include "tfline/errors.hpp"

#include <cmath>
#include <limits>

namespace tfline {

namespace {

// Sums with more live terms than this are refused rather than left running.
constexpr std::uint64_t kMaxLiveTerms = 1'000'000'000ULL;

double attenuation(double alpha, double path) {
    return alpha == 0.0 ? 1.0 : std::exp(-alpha * path);
}

// Integer power by repeated squaring; exact for 0, +-1 and powers of two.
double ipow(double base, std::uint64_t exp) {
    double result = 1.0;
    while (exp != 0) {
        if (exp & 1U) result *= base;
        base *= base;
        exp >>= 1U;
    }
    return result;
}

std::uint64_t clamp_floor(double value) {
    if (!(value >= 0.0)) return 0;
    constexpr double cap = 4.0e18;
    return static_cast<std::uint64_t>(std::floor(value < cap ? value : cap));
}

}  // namespace

BounceModel::BounceModel(const FiniteLine& line) : length_(line.length) {
    if (!(line.length > 0.0) || !std::isfinite(line.length)) {
        throw ParameterError("line length must be positive and finite");
    }
    const DerivedQuantities q = derived_quantities(line.params);
    if (q.regime == Regime::General || !q.z0) {
        throw RegimeError(
            "time-domain response is only defined for distortionless or lossless lines");
    }
    u_ = q.u;
    alpha_ = q.regime == Regime::Lossless ? 0.0 : q.alpha;
    z0_ = *q.z0;
    refl_ = reflection_coefficients(line.r_s, line.r_r, z0_);
    divider_ = source_divider(line.r_s, z0_);
}

double BounceModel::forward_delay(std::uint64_t m, double x) const noexcept {
    return (2.0 * static_cast<double>(m) * length_ + x) / u_;
}

double BounceModel::backward_delay(std::uint64_t m, double x) const noexcept {
    return (2.0 * static_cast<double>(m + 1) * length_ - x) / u_;
}

void BounceModel::check_point(double x, double t) const {
    if (!(x >= 0.0) || !(x <= length_)) {
        throw ParameterError("observation point must satisfy 0 <= x <= L");
    }
    if (!std::isfinite(t)) {
        throw ParameterError("observation time must be finite");
    }
}

ArrivalCounts BounceModel::arrivals(double x, double t) const {
    check_point(x, t);
    ArrivalCounts counts;
    // Start from the analytic estimate, then settle on the delay predicate itself.
    std::uint64_t f = u_ * t >= x ? clamp_floor((u_ * t - x) / (2.0 * length_)) + 1 : 0;
    while (f > 0 && forward_delay(f - 1, x) > t) --f;
    while (forward_delay(f, x) <= t) ++f;
    std::uint64_t b = clamp_floor((u_ * t + x) / (2.0 * length_));
    while (b > 0 && backward_delay(b - 1, x) > t) --b;
    while (backward_delay(b, x) <= t) ++b;
    counts.forward = f;
    counts.backward = b;
    return counts;
}

TermEnumeration BounceModel::enumerate(double x, double t) const {
    TermEnumeration out;
    out.counts = arrivals(x, t);
    if (out.counts.total() > kMaxLiveTerms) {
        throw ParameterError("too many arrived waves to enumerate");
    }
    out.terms.reserve(out.counts.total());
    const double rs = refl_.sending;
    const double rr = refl_.receiving;
    std::uint64_t mf = 0;
    std::uint64_t mb = 0;
    while (mf < out.counts.forward || mb < out.counts.backward) {
        const bool take_forward =
            mb >= out.counts.backward ||
            (mf < out.counts.forward && forward_delay(mf, x) <= backward_delay(mb, x));
        if (take_forward) {
            const double path = 2.0 * static_cast<double>(mf) * length_ + x;
            out.terms.push_back(ReflectionTerm{mf, Direction::Forward, forward_delay(mf, x),
                                               attenuation(alpha_, path),
                                               ipow(rs, mf) * ipow(rr, mf), divider_});
            ++mf;
        } else {
            const double path = 2.0 * static_cast<double>(mb + 1) * length_ - x;
            out.terms.push_back(ReflectionTerm{mb, Direction::Backward, backward_delay(mb, x),
                                               attenuation(alpha_, path),
                                               ipow(rs, mb) * ipow(rr, mb + 1), divider_});
            ++mb;
        }
    }
    return out;
}

double BounceModel::voltage(double x, double t, const SourceSpec& source) const {
    check_point(x, t);
    const double rs = refl_.sending;
    const double rr = refl_.receiving;
    const double ratio = rs * rr;
    // Running coefficients for the next forward and backward wave.
    double cf = 1.0;
    double cb = rr;
    std::uint64_t mf = 0;
    std::uint64_t mb = 0;
    std::uint64_t live = 0;
    double sum = 0.0;
    for (;;) {
        const double df = forward_delay(mf, x);
        const double db = backward_delay(mb, x);
        const bool f_in = df <= t;
        const bool b_in = db <= t;
        if (!f_in && !b_in) break;
        const double pf = 2.0 * static_cast<double>(mf) * length_ + x;
        const double pb = 2.0 * static_cast<double>(mb + 1) * length_ - x;
        const double af = cf * attenuation(alpha_, pf);
        const double ab = cb * attenuation(alpha_, pb);
        // Magnitudes never grow with m, so two vanished fronts end the sum.
        if (af == 0.0 && ab == 0.0) break;
        if (++live > kMaxLiveTerms) {
            throw ParameterError("too many non-vanishing waves in the bounce sum");
        }
        if (f_in && (!b_in || df <= db)) {
            sum += af * source(t - df);
            cf *= ratio;
            ++mf;
        } else {
            sum += ab * source(t - db);
            cb *= ratio;
            ++mb;
        }
    }
    return divider_ * sum;
}

std::optional<std::uint64_t> BounceModel::last_nonzero_round_trip(double x) const {
    const double q = std::abs(refl_.sending * refl_.receiving);
    if (q == 0.0) {
        return 0;
    }
    // log|term_m| = m log q - alpha (2 m L + x); terms vanish below the smallest subnormal.
    const double floor_log = std::log(std::numeric_limits<double>::denorm_min());
    const double slope = std::log(q) - 2.0 * alpha_ * length_;
    if (!(slope < 0.0)) {
        return std::nullopt;
    }
    return clamp_floor((floor_log + alpha_ * x) / slope);
}

TermEnumeration enumerate_terms(const FiniteLine& line, double x, double t) {
    return BounceModel(line).enumerate(x, t);
}

double voltage_response(const FiniteLine& line, double x, double t, const SourceSpec& source) {
    return BounceModel(line).voltage(x, t, source);
}

namespace {

struct LaplaceTerms {
    std::complex<double> gamma;
    std::complex<double> rs;
    std::complex<double> rr;
    std::complex<double> divider;
};

LaplaceTerms laplace_terms(const FiniteLine& line, std::complex<double> s) {
    if (!(line.length > 0.0)) {
        throw ParameterError("line length must be positive");
    }
    const LaplaceLine ll = laplace_gamma_z0(line.params, s);
    return LaplaceTerms{ll.gamma, reflection_coefficient(Resistance(line.r_s), ll.z0),
                        reflection_coefficient(line.r_r, ll.z0), source_divider(line.r_s, ll.z0)};
}

void check_x(const FiniteLine& line, double x) {
    if (!(x >= 0.0) || !(x <= line.length)) {
        throw ParameterError("observation point must satisfy 0 <= x <= L");
    }
}

}  // namespace

LaplacePartialSum laplace_partial_sum(const FiniteLine& line, double x, std::complex<double> s,
                                      std::complex<double> source_transform, std::uint64_t m_max) {
    check_x(line, x);
    const LaplaceTerms lt = laplace_terms(line, s);
    const double L = line.length;
    const std::complex<double> prefactor = lt.divider * source_transform;
    std::complex<double> acc{0.0, 0.0};
    std::complex<double> coeff{1.0, 0.0};  // (r_s r_r)^m
    std::complex<double> pair{0.0, 0.0};
    for (std::uint64_t m = 0; m <= m_max; ++m) {
        const double md = static_cast<double>(m);
        pair = coeff * std::exp(-lt.gamma * (2.0 * md * L + x)) +
               coeff * lt.rr * std::exp(-lt.gamma * (2.0 * (md + 1.0) * L - x));
        acc += pair;
        coeff *= lt.rs * lt.rr;
    }
    return LaplacePartialSum{prefactor * acc, std::abs(prefactor * pair)};
}

double convergence_ratio(const FiniteLine& line, std::complex<double> s) {
    const LaplaceTerms lt = laplace_terms(line, s);
    return std::abs(lt.rs * lt.rr * std::exp(-2.0 * lt.gamma * line.length));
}

std::complex<double> laplace_closed_form(const FiniteLine& line, double x, std::complex<double> s,
                                         std::complex<double> source_transform) {
    check_x(line, x);
    const LaplaceTerms lt = laplace_terms(line, s);
    const std::complex<double> round_trip = std::exp(-2.0 * lt.gamma * line.length);
    const double ratio = std::abs(lt.rs * lt.rr * round_trip);
    if (!(ratio < 1.0)) {
        throw ConvergenceError("reflection series does not converge (|r_s r_r e^{-2 gamma L}| >= 1)",
                               ratio);
    }
    const std::complex<double> numer =
        std::exp(-lt.gamma * x) + lt.rr * round_trip * std::exp(lt.gamma * x);
    return lt.divider * source_transform * numer / (1.0 - lt.rs * lt.rr * round_trip);
}

}  // namespace tfline
