#pragma once

// The four CLI commands as pure functions of a validated RunConfig. Each
// returns its complete output as text so the CLI can refuse to print
// anything when a later step fails.

#include "tfline/config.hpp"
#include "tfline/hyperreal.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tfline::commands {

/// Geometry and electrical summary: mu, L_n and K_n per n, regime, reflection coefficients.
std::string describe(const RunConfig& cfg, const std::vector<std::uint64_t>& ns);

/// CSV with header n,t,L_n,K_n,fwd_count,bwd_count,v[,bound]; one row per
/// (n, grid time). Throws RegimeError for GENERAL lines or when a bound
/// column is requested on a line without one.
std::string simulate_csv(const RunConfig& cfg, const std::vector<std::uint64_t>& ns);

struct HyperRow {
    std::uint64_t n;
    double t;
    double v;
    std::optional<double> bound;
};

struct HyperResult {
    ClassificationVerdict verdict;
    std::vector<HyperRow> rows;
    /// Lossless step response with |r_s r_r| < 1: limit of the bounce sum
    /// A Z0/(Z0+R_s) (1 + r_r)/(1 - r_s r_r), and the same without the divider.
    std::optional<double> step_limit;
    std::optional<double> step_limit_divider_free;
    std::string report;
    std::string csv;  // n,t_n,v_n[,bound_n]
};

HyperResult hyper(const RunConfig& cfg, Window window, double eps);

struct XcheckRow {
    std::complex<double> s;
    double ratio;                                 // |r_s r_r e^{-2 gamma L}|
    std::optional<std::complex<double>> closed;   // absent when the series diverges
    std::complex<double> partial;
    std::optional<double> rel_discrepancy;
    double last_pair;
};

/// Compares the summed Laplace series with its partial sums at the sample
/// point of truncation cfg.simulate_n. Works for every regime.
std::vector<XcheckRow> xcheck_rows(const RunConfig& cfg, std::uint64_t m_max);
std::string xcheck_csv(const std::vector<XcheckRow>& rows);

/// Shortest round-trip decimal form used in every emitted number.
std::string format_number(double value);

}  // namespace tfline::commands
