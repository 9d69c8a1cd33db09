#include "tfline/transfinite.hpp"

#include "tfline/errors.hpp"

#include <cmath>
#include <sstream>

namespace tfline {

TimeProfile TimeProfile::linear(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b) || a < 0.0) {
        throw ParameterError("linear time profile needs finite a >= 0 and finite b");
    }
    TimeProfile p;
    p.form_ = Form::Linear;
    p.a_ = a;
    p.b_ = b;
    return p;
}

TimeProfile TimeProfile::superlinear(double a, double power) {
    if (!std::isfinite(a) || !(a > 0.0) || !std::isfinite(power) || !(power > 1.0)) {
        throw ParameterError("superlinear time profile needs a > 0 and p > 1");
    }
    TimeProfile p;
    p.form_ = Form::Superlinear;
    p.a_ = a;
    p.b_ = power;
    return p;
}

TimeProfile TimeProfile::table(std::uint64_t first_n, std::vector<double> values) {
    if (values.empty()) {
        throw ParameterError("time table is empty");
    }
    for (double v : values) {
        if (!std::isfinite(v) || v < 0.0) {
            throw ParameterError("time table entries must be finite and >= 0");
        }
    }
    TimeProfile p;
    p.form_ = Form::Table;
    p.first_n_ = first_n;
    p.table_ = std::move(values);
    return p;
}

double TimeProfile::at(std::uint64_t n) const {
    double t = 0.0;
    switch (form_) {
        case Form::Linear:
            t = a_ * static_cast<double>(n) + b_;
            break;
        case Form::Superlinear:
            t = a_ * std::pow(static_cast<double>(n), b_);
            break;
        case Form::Table:
            if (n < first_n_ || n - first_n_ >= table_.size()) {
                throw ParameterError("time table has no entry for n=" + std::to_string(n));
            }
            t = table_[n - first_n_];
            break;
    }
    if (!(t >= 0.0)) {
        throw ParameterError("time profile is negative at n=" + std::to_string(n));
    }
    return t;
}

std::string TimeProfile::describe() const {
    std::ostringstream os;
    switch (form_) {
        case Form::Linear: os << "linear(a=" << a_ << ", b=" << b_ << ")"; break;
        case Form::Superlinear: os << "superlinear(a=" << a_ << ", p=" << b_ << ")"; break;
        case Form::Table:
            os << "table(n=" << first_n_ << ".." << first_n_ + table_.size() - 1 << ")";
            break;
    }
    return os.str();
}

FiniteLine truncated_line(const TerminatedLineSpec& spec, std::uint64_t n) {
    return FiniteLine{truncation_length(spec, n), spec.params, spec.r_s, spec.r_r};
}

namespace {

void require_time_domain(const TerminatedLineSpec& spec) {
    if (spec.params.regime() == Regime::General) {
        throw RegimeError(
            "transfinite responses are only available for distortionless or lossless lines");
    }
}

void require_sample(const TerminatedLineSpec& spec, const OrdinalIndex& idx, DigitBound bound) {
    spec.validate();
    if (!validate_sample(idx, spec, bound)) {
        throw ParameterError("sample " + idx.str() + " is not a point of the terminated line");
    }
}

}  // namespace

std::shared_ptr<const ResponseAssembly::State> ResponseAssembly::make_state(
    TerminatedLineSpec spec, OrdinalIndex idx, TimeProfile profile, DigitBound bound) {
    require_sample(spec, idx, bound);
    require_time_domain(spec);
    const std::uint64_t n_min = minimal_truncation(idx, spec);
    return std::make_shared<const State>(
        State{std::move(spec), std::move(idx), std::move(profile), n_min});
}

ResponseAssembly::ResponseAssembly(TerminatedLineSpec spec, OrdinalIndex idx, TimeProfile profile,
                                   DigitBound bound)
    : state_(make_state(std::move(spec), std::move(idx), std::move(profile), bound)),
      sequence_([s = state_](std::uint64_t n) { return evaluate(*s, n).voltage; }, state_->n_min,
                "v at sample " + state_->idx.str() + " under " + state_->profile.describe()) {}

TruncationSample ResponseAssembly::evaluate(std::uint64_t n) const {
    return evaluate(*state_, n);
}

TruncationSample ResponseAssembly::evaluate(const State& state, std::uint64_t n) {
    if (n < state.n_min) {
        throw NotMaterializedError(n, state.n_min);
    }
    const double length = truncation_length(state.spec, n);
    const double distance = static_cast<double>(sample_units(state.idx, n)) * state.spec.delta_x;
    const double t = state.profile.at(n);
    const BounceModel model(truncated_line(state.spec, n));
    return TruncationSample{n, t, length, distance, model.arrivals(distance, t),
                            model.voltage(distance, t, state.spec.source)};
}

ResponseAssembly assemble_response(const TerminatedLineSpec& spec, const OrdinalIndex& idx,
                                   const TimeProfile& profile, DigitBound bound) {
    return ResponseAssembly(spec, idx, profile, bound);
}

double distortionless_bound(const TerminatedLineSpec& spec, const OrdinalIndex& idx,
                            std::uint64_t n, DigitBound bound) {
    require_sample(spec, idx, bound);
    if (spec.params.regime() != Regime::Distortionless) {
        throw RegimeError("the attenuation bound needs a distortionless line (alpha > 0)");
    }
    const double alpha = derived_quantities(spec.params).alpha;
    if (!(alpha > 0.0)) {
        throw RegimeError("the attenuation bound is undefined for alpha = 0");
    }
    if (idx.mu() < 2 || !idx.beyond_initial_line()) {
        throw ParameterError("the attenuation bound needs a point beyond the initial omega-line");
    }
    const std::uint64_t minimal = minimal_truncation(idx, spec);
    if (n < minimal) {
        throw NotMaterializedError(n, minimal);
    }
    const double m_bound = spec.source.bound();
    const double dx = spec.delta_x;
    if (idx.mu() == 2) {
        const double nd = static_cast<double>(n);
        const double k1 = static_cast<double>(idx[1]);
        const double l1 = static_cast<double>(spec.term_digits[1]);
        const double denom = 1.0 - std::exp(-2.0 * alpha * l1 * dx);
        return m_bound * (std::exp(-alpha * k1 * nd * dx) + std::exp(-alpha * l1 * nd * dx)) / denom;
    }
    const double k_n = static_cast<double>(sample_units(idx, n)) * dx;
    const double l_n = truncation_length(spec, n);
    const double denom = 1.0 - std::exp(-2.0 * alpha * l_n);
    return m_bound * (std::exp(-alpha * k_n) + std::exp(-alpha * l_n)) / denom;
}

RegimeReport regime_report(const TerminatedLineSpec& spec, const OrdinalIndex& idx,
                           const TimeProfile& profile, std::uint64_t n, DigitBound bound) {
    const ResponseAssembly assembly(spec, idx, profile, bound);
    const TruncationSample sample = assembly.evaluate(n);
    const BounceModel model(truncated_line(spec, n));

    RegimeReport report{};
    report.n = n;
    report.t = sample.t;
    report.length = sample.length;
    report.distance = sample.distance;
    report.counts = sample.counts;
    report.linear_profile = profile.is_linear_growth();
    report.last_nonzero_round_trip = model.last_nonzero_round_trip(sample.distance);
    if (report.last_nonzero_round_trip) {
        const std::uint64_t m = *report.last_nonzero_round_trip;
        report.last_nonzero_delay = model.reflections().receiving != 0.0
                                        ? model.backward_delay(m, sample.distance)
                                        : model.forward_delay(m, sample.distance);
        report.all_reflections_active = sample.t >= *report.last_nonzero_delay;
    } else {
        report.all_reflections_active = false;
    }
    return report;
}

}  // namespace tfline
