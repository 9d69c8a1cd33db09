#include "tfline/source.hpp"

#include "tfline/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tfline {

SourceSpec SourceSpec::unit_step() {
    return scaled_step(1.0);
}

SourceSpec SourceSpec::scaled_step(double amplitude) {
    if (!std::isfinite(amplitude) || amplitude == 0.0) {
        throw ParameterError("step amplitude must be finite and nonzero");
    }
    SourceSpec s;
    s.kind_ = amplitude == 1.0 ? Kind::UnitStep : Kind::ScaledStep;
    s.amplitude_ = amplitude;
    s.bound_ = std::abs(amplitude);
    return s;
}

SourceSpec SourceSpec::table(std::vector<double> times, std::vector<double> values) {
    if (times.empty() || times.size() != values.size()) {
        throw ParameterError("source table needs matching, nonempty time and value lists");
    }
    if (!(times.front() >= 0.0)) {
        throw ParameterError("source table breakpoints must be >= 0");
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!std::isfinite(times[i]) || !std::isfinite(values[i])) {
            throw ParameterError("source table entries must be finite");
        }
        if (i > 0 && !(times[i] > times[i - 1])) {
            throw ParameterError("source table breakpoints must be strictly increasing");
        }
    }
    SourceSpec s;
    s.kind_ = Kind::Table;
    s.times_ = std::move(times);
    s.values_ = std::move(values);
    s.bound_ = 0.0;
    for (double v : s.values_) {
        s.bound_ = std::max(s.bound_, std::abs(v));
    }
    if (s.bound_ == 0.0) {
        throw ParameterError("source table is identically zero");
    }
    return s;
}

double SourceSpec::operator()(double tau) const noexcept {
    if (kind_ != Kind::Table) {
        return tau >= 0.0 ? amplitude_ : 0.0;
    }
    const auto it = std::upper_bound(times_.begin(), times_.end(), tau);
    if (it == times_.begin()) {
        return 0.0;
    }
    return values_[static_cast<std::size_t>(it - times_.begin()) - 1];
}

std::complex<double> SourceSpec::laplace(std::complex<double> s) const {
    if (!(s.real() > 0.0)) {
        throw DomainError("Laplace variable requires Re s > 0");
    }
    if (kind_ != Kind::Table) {
        return amplitude_ / s;
    }
    // Sum over segments of v_i (e^{-s t_i} - e^{-s t_{i+1}}) / s, last segment open-ended.
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i = 0; i < times_.size(); ++i) {
        std::complex<double> seg = std::exp(-s * times_[i]);
        if (i + 1 < times_.size()) {
            seg -= std::exp(-s * times_[i + 1]);
        }
        acc += values_[i] * seg;
    }
    return acc / s;
}

std::string SourceSpec::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::UnitStep: os << "unit_step"; break;
        case Kind::ScaledStep: os << "step(" << amplitude_ << ")"; break;
        case Kind::Table: os << "table(" << times_.size() << " breakpoints)"; break;
    }
    return os.str();
}

}  // namespace tfline
