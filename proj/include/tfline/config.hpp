#pragma once

#include "tfline/hyperreal.hpp"
#include "tfline/line_geometry.hpp"
#include "tfline/transfinite.hpp"

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tfline {

/// Time grid for `simulate`: count points from start to stop inclusive.
struct TimeGrid {
    double start = 0.0;
    double stop = 0.0;
    std::uint64_t count = 1;

    std::vector<double> points() const;
};

/// Everything a CLI run needs, validated at load time.
///
/// File format: `[section]` headers and `key = value` lines; `#` starts a
/// comment. Numbers are decimals, integers, rationals `p/q` or exponent
/// notation. Lists are whitespace separated. See README for the keys.
struct RunConfig {
    TerminatedLineSpec line;
    OrdinalIndex sample;
    DigitBound digit_bound = DigitBound::Strict;
    std::optional<TimeProfile> profile;

    Window window = kDefaultWindow;
    double eps = kDefaultEps;
    std::vector<std::uint64_t> describe_ns;
    bool bound_column = false;

    std::uint64_t simulate_n = 1;
    TimeGrid grid;

    std::vector<std::complex<double>> s_samples;
    std::uint64_t m_max = 60;

    std::optional<std::string> csv_path;
};

/// Parses and validates a configuration. Throws ConfigError with a
/// 1-based line:column for every syntax or invariant violation.
RunConfig parse_config(std::istream& in);
RunConfig parse_config_string(const std::string& text);
RunConfig load_config(const std::string& path);

}  // namespace tfline
