#pragma once

#include "tfline/line_geometry.hpp"
#include "tfline/line_params.hpp"
#include "tfline/source.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace tfline::testing {

inline TerminatedLineSpec make_spec(std::vector<std::uint64_t> digits, double dx, double r_s,
                                    Resistance r_r, LineParams params,
                                    SourceSpec source = SourceSpec::unit_step()) {
    return TerminatedLineSpec{std::move(digits), dx, r_s, r_r, params, source};
}

/// l = c = 1, so u = Z0 = 1 and alpha = r.
inline LineParams unit_line(double loss = 0.0) { return LineParams(loss, 1.0, loss, 1.0); }

/// Independent evaluation of sum_p n^p d_p by explicit powers.
inline std::uint64_t poly_oracle(const std::vector<std::uint64_t>& digits, std::uint64_t n) {
    std::uint64_t total = 0;
    for (std::size_t p = 0; p < digits.size(); ++p) {
        std::uint64_t power = 1;
        for (std::size_t q = 0; q < p; ++q) power *= n;
        total += digits[p] * power;
    }
    return total;
}

/// Bounce-diagram sum written directly from the wave picture, one term per
/// front, with no shared code from the solver.
inline double bounce_oracle(double length, double u, double alpha, double divider, double r_s,
                            double r_r, double x, double t, double amplitude) {
    double v = 0.0;
    for (std::uint64_t m = 0;; ++m) {
        const double fwd_path = 2.0 * static_cast<double>(m) * length + x;
        const double bwd_path = 2.0 * static_cast<double>(m + 1) * length - x;
        const bool fwd = fwd_path / u <= t;
        const bool bwd = bwd_path / u <= t;
        if (!fwd && !bwd) break;
        const double rt = std::pow(r_s * r_r, static_cast<double>(m));
        if (fwd) v += divider * amplitude * rt * std::exp(-alpha * fwd_path);
        if (bwd) v += divider * amplitude * rt * r_r * std::exp(-alpha * bwd_path);
    }
    return v;
}

}  // namespace tfline::testing
