// tfline: terminated transfinite transmission lines from the command line.
//
// All output is assembled in memory first; nothing is written unless every
// step succeeded. Exit codes: 0 ok, 2 config/parameter error, 3 regime or
// domain error.

#include "tfline/commands.hpp"
#include "tfline/config.hpp"
#include "tfline/errors.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRegime = 3;

// Bad flag values; reported without a config-file position.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string config_path;
    std::optional<std::uint64_t> n;
    std::optional<std::string> n_range;
    std::optional<std::string> out;
    std::optional<double> eps;
    std::optional<std::string> window;
};

std::uint64_t parse_u64(const std::string& text, const std::string& flag) {
    std::uint64_t value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty()) {
        throw UsageError(flag + ": '" + text + "' is not a non-negative integer");
    }
    return value;
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text, const std::string& flag) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw UsageError(flag + " expects a:b");
    }
    const std::uint64_t a = parse_u64(text.substr(0, colon), flag);
    const std::uint64_t b = parse_u64(text.substr(colon + 1), flag);
    if (b < a) throw UsageError(flag + ": empty range " + text);
    return {a, b};
}

std::vector<std::uint64_t> requested_ns(const Options& opt, std::vector<std::uint64_t> fallback) {
    if (opt.n) return {*opt.n};
    if (opt.n_range) {
        const auto [a, b] = parse_range(*opt.n_range, "--n-range");
        if (b - a > 1'000'000) throw UsageError("--n-range spans too many values");
        std::vector<std::uint64_t> ns;
        for (std::uint64_t n = a; n <= b; ++n) ns.push_back(n);
        return ns;
    }
    return fallback;
}

struct Output {
    std::string stdout_text;
    std::optional<std::string> file_path;
    std::string file_text;
};

// Writes the CSV to --out (or the config's [output] csv) when given, else to stdout.
void route_csv(Output& out, const Options& opt, const tfline::RunConfig& cfg, std::string csv) {
    if (opt.out) {
        out.file_path = *opt.out;
    } else if (cfg.csv_path) {
        out.file_path = *cfg.csv_path;
    }
    if (out.file_path) {
        out.file_text = std::move(csv);
    } else {
        out.stdout_text += csv;
    }
}

Output run(const std::string& command, const Options& opt) {
    using namespace tfline;
    RunConfig cfg = load_config(opt.config_path);
    if (opt.eps) {
        if (!(*opt.eps > 0.0)) throw UsageError("--eps must be positive");
        cfg.eps = *opt.eps;
    }
    if (opt.window) {
        const auto [a, b] = parse_range(*opt.window, "--window");
        if (b - a < kMinWindowSpan) throw UsageError("--window needs last - first >= 8");
        cfg.window = Window{a, b};
    }

    Output out;
    if (command == "describe") {
        out.stdout_text = commands::describe(cfg, requested_ns(opt, cfg.describe_ns));
    } else if (command == "simulate") {
        route_csv(out, opt, cfg, commands::simulate_csv(cfg, requested_ns(opt, {cfg.simulate_n})));
    } else if (command == "hyper") {
        if (opt.n || opt.n_range) throw UsageError("hyper takes --window, not --n");
        commands::HyperResult result = commands::hyper(cfg, cfg.window, cfg.eps);
        out.stdout_text = result.report;
        if (opt.out || cfg.csv_path) {
            route_csv(out, opt, cfg, std::move(result.csv));
        } else {
            out.stdout_text += "\n" + result.csv;
        }
    } else if (command == "xcheck") {
        if (opt.n_range) throw UsageError("xcheck takes a single --n");
        if (opt.n) cfg.simulate_n = *opt.n;
        route_csv(out, opt, cfg, commands::xcheck_csv(commands::xcheck_rows(cfg, cfg.m_max)));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Terminated transfinite transmission lines"};
    app.require_subcommand(1, 1);
    Options opt;

    const char* descriptions[][2] = {
        {"describe", "Print geometry, regime and reflection coefficients"},
        {"simulate", "Bounce-diagram voltage on a time grid as CSV"},
        {"hyper", "Classify the transfinite response over an n-window"},
        {"xcheck", "Compare the Laplace closed form with its partial sums"},
    };
    for (const auto& [name, text] : descriptions) {
        CLI::App* sub = app.add_subcommand(name, text);
        sub->add_option("--config", opt.config_path, "Configuration file")->required();
        auto* n = sub->add_option("--n", opt.n, "Single truncation index");
        auto* range = sub->add_option("--n-range", opt.n_range, "Truncation range a:b");
        n->excludes(range);
        sub->add_option("--out", opt.out, "Write CSV to this path");
        sub->add_option("--eps", opt.eps, "Infinitesimal threshold");
        sub->add_option("--window", opt.window, "Classification window a:b");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    Output out;
    try {
        out = run(command, opt);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const tfline::RegimeError& e) {
        std::cerr << "regime error: " << e.what() << "\n";
        return kExitRegime;
    } catch (const tfline::DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitRegime;
    } catch (const tfline::ConvergenceError& e) {
        std::cerr << "convergence error: " << e.what() << "\n";
        return kExitRegime;
    } catch (const tfline::ConfigError& e) {
        std::cerr << "config error: " << opt.config_path << ":" << e.what() << "\n";
        return kExitConfig;
    } catch (const tfline::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }

    if (out.file_path) {
        std::ofstream file(*out.file_path, std::ios::binary | std::ios::trunc);
        file << out.file_text;
        if (!file) {
            std::cerr << "error: cannot write " << *out.file_path << "\n";
            return kExitConfig;
        }
    }
    std::cout << out.stdout_text;
    return 0;
}
