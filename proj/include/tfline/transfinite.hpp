#pragma once

#include "tfline/finite_solver.hpp"
#include "tfline/hyperreal.hpp"
#include "tfline/line_geometry.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tfline {

/// Hyperreal observation time t = [t_n].
class TimeProfile {
public:
    enum class Form { Linear, Superlinear, Table };

    /// t_n = a n + b, a >= 0, with t_n >= 0 wherever evaluated.
    static TimeProfile linear(double a, double b);
    /// t_n = a n^p, a > 0, p > 1.
    static TimeProfile superlinear(double a, double p);
    /// Explicit t_n for n = first_n, first_n + 1, ...
    static TimeProfile table(std::uint64_t first_n, std::vector<double> values);

    Form form() const noexcept { return form_; }
    double a() const noexcept { return a_; }
    double b_or_p() const noexcept { return b_; }

    /// t_n; throws ParameterError outside a table's range or when t_n < 0.
    double at(std::uint64_t n) const;

    /// True for t_n = O(n) (linear profiles).
    bool is_linear_growth() const noexcept { return form_ == Form::Linear; }

    std::string describe() const;

private:
    TimeProfile() = default;

    Form form_ = Form::Linear;
    double a_ = 0.0;
    double b_ = 0.0;
    std::uint64_t first_n_ = 0;
    std::vector<double> table_;
};

/// Everything computed for one truncation n.
struct TruncationSample {
    std::uint64_t n;
    double t;
    double length;    // L_n
    double distance;  // K_n
    ArrivalCounts counts;
    double voltage;
};

/// v(x_{j,n}, t_n) wired as a hyperreal sequence over n.
class ResponseAssembly {
public:
    ResponseAssembly(TerminatedLineSpec spec, OrdinalIndex idx, TimeProfile profile,
                     DigitBound bound);

    const TerminatedLineSpec& spec() const noexcept { return state_->spec; }
    const OrdinalIndex& index() const noexcept { return state_->idx; }
    const TimeProfile& profile() const noexcept { return state_->profile; }
    std::uint64_t n_min() const noexcept { return state_->n_min; }

    /// Solve the n-th truncation at the sample point. Throws NotMaterializedError for n < n_min.
    TruncationSample evaluate(std::uint64_t n) const;

    /// n -> v(x_{j,n}, t_n); shares state with this assembly.
    const HyperrealSequence& sequence() const noexcept { return sequence_; }

private:
    struct State {
        TerminatedLineSpec spec;
        OrdinalIndex idx;
        TimeProfile profile;
        std::uint64_t n_min;
    };
    static std::shared_ptr<const State> make_state(TerminatedLineSpec spec, OrdinalIndex idx,
                                                   TimeProfile profile, DigitBound bound);
    static TruncationSample evaluate(const State& state, std::uint64_t n);

    std::shared_ptr<const State> state_;
    HyperrealSequence sequence_;
};

/// Validates the sample and regime (DISTORTIONLESS or LOSSLESS, else RegimeError).
ResponseAssembly assemble_response(const TerminatedLineSpec& spec, const OrdinalIndex& idx,
                                   const TimeProfile& profile,
                                   DigitBound bound = DigitBound::Strict);

/// The n-th truncation as a finite line.
FiniteLine truncated_line(const TerminatedLineSpec& spec, std::uint64_t n);

/// Upper bound on |v(x_{j,n}, t)| valid for every t, for a distortionless
/// line at a point beyond the initial omega-line:
///   mu = 2:  M (e^{-alpha k_1 n dx} + e^{-alpha l_1 n dx}) / (1 - e^{-2 alpha l_1 dx})
///   mu > 2:  M (e^{-alpha K_n} + e^{-alpha L_n}) / (1 - e^{-2 alpha L_n})
/// Throws RegimeError unless the line is distortionless with alpha > 0.
double distortionless_bound(const TerminatedLineSpec& spec, const OrdinalIndex& idx,
                            std::uint64_t n, DigitBound bound = DigitBound::Strict);

struct RegimeReport {
    std::uint64_t n;
    double t;
    double length;
    double distance;
    ArrivalCounts counts;
    bool linear_profile;
    /// Terms vanish numerically after this round trip (nullopt: |r_s r_r| = 1, lossless).
    std::optional<std::uint64_t> last_nonzero_round_trip;
    /// Delay of the last term with a nonzero contribution, if terms vanish.
    std::optional<double> last_nonzero_delay;
    /// t_n has passed the front of every nonzero term.
    bool all_reflections_active;
};

RegimeReport regime_report(const TerminatedLineSpec& spec, const OrdinalIndex& idx,
                           const TimeProfile& profile, std::uint64_t n,
                           DigitBound bound = DigitBound::Strict);

}  // namespace tfline
