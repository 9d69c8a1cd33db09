#include "tfline/commands.hpp"

#include "tfline/errors.hpp"
#include "tfline/kernels.hpp"
#include "tfline/transfinite.hpp"

#include <fmt/format.h>

#include <cmath>

namespace tfline::commands {

std::string format_number(double value) {
    if (value == 0.0) return "0";  // folds -0
    return fmt::format("{}", value);
}

namespace {

std::string join_digits(const std::vector<std::uint64_t>& digits) {
    std::string out;
    for (std::size_t p = 0; p < digits.size(); ++p) {
        out += (p == 0 ? "" : " ") + std::to_string(digits[p]);
    }
    return out;
}

bool bound_applies(const RunConfig& cfg) {
    return cfg.line.params.regime() == Regime::Distortionless && cfg.sample.mu() >= 2 &&
           cfg.sample.beyond_initial_line();
}

}  // namespace

std::string describe(const RunConfig& cfg, const std::vector<std::uint64_t>& ns) {
    const TerminatedLineSpec& spec = cfg.line;
    const DerivedQuantities q = derived_quantities(spec.params);
    std::string out;
    out += fmt::format("mu: {}\n", spec.mu());
    out += fmt::format("termination: {}\n", join_digits(spec.term_digits));
    out += fmt::format("sample: {}\n", join_digits(cfg.sample.digits()));
    out += fmt::format("digit_bound: {}\n",
                       cfg.digit_bound == DigitBound::Strict ? "strict" : "nested");
    out += fmt::format("delta_x: {}\n", format_number(spec.delta_x));
    out += fmt::format("regime: {}\n", to_string(q.regime));
    out += fmt::format("delta: {}\n", format_number(q.delta));
    out += fmt::format("sigma: {}\n", format_number(q.sigma));
    out += fmt::format("alpha: {}\n", format_number(q.regime == Regime::Lossless ? 0.0 : q.alpha));
    out += fmt::format("u: {}\n", format_number(q.u));
    out += fmt::format("R_s: {}\n", format_number(spec.r_s));
    out += fmt::format("R_r: {}\n", spec.r_r.is_open() ? std::string("inf")
                                                        : format_number(spec.r_r.ohms()));
    if (q.z0) {
        const ReflectionPair refl = reflection_coefficients(spec.r_s, spec.r_r, *q.z0);
        out += fmt::format("Z0: {}\n", format_number(*q.z0));
        out += fmt::format("r_s: {}\n", format_number(refl.sending));
        out += fmt::format("r_r: {}\n", format_number(refl.receiving));
        out += fmt::format("divider: {}\n", format_number(source_divider(spec.r_s, *q.z0)));
    } else {
        out += "Z0: complex (GENERAL regime; frequency dependent)\n";
    }
    out += fmt::format("source: {}\n", spec.source.describe());
    const std::uint64_t n_min = minimal_truncation(cfg.sample, spec);
    out += fmt::format("n_min: {}\n", n_min);
    out += "n,L_n,K_n,L_n-K_n\n";
    for (std::uint64_t n : ns) {
        const double l_n = truncation_length(spec, n);
        if (n < n_min) {
            out += fmt::format("{},{},absent,absent\n", n, format_number(l_n));
            continue;
        }
        const double k_n = sample_distance(cfg.sample, spec, n, cfg.digit_bound);
        out += fmt::format("{},{},{},{}\n", n, format_number(l_n), format_number(k_n),
                           format_number(distance_to_receiving_end(cfg.sample, spec, n,
                                                                   cfg.digit_bound)));
    }
    return out;
}

std::string simulate_csv(const RunConfig& cfg, const std::vector<std::uint64_t>& ns) {
    const TerminatedLineSpec& spec = cfg.line;
    if (spec.params.regime() == Regime::General) {
        throw RegimeError("simulate needs a distortionless or lossless line");
    }
    if (cfg.bound_column && !bound_applies(cfg)) {
        throw RegimeError(
            "bound column needs a distortionless line and a sample beyond the initial omega-line");
    }
    const std::vector<double> times = cfg.grid.points();
    std::string out = cfg.bound_column ? "n,t,L_n,K_n,fwd_count,bwd_count,v,bound\n"
                                       : "n,t,L_n,K_n,fwd_count,bwd_count,v\n";
    for (std::uint64_t n : ns) {
        const double k_n = sample_distance(cfg.sample, spec, n, cfg.digit_bound);
        const double l_n = truncation_length(spec, n);
        const BounceModel model(truncated_line(spec, n));
        const std::vector<double> v = kernels::parallel::voltage_grid(model, k_n, times, spec.source);
        const std::string bound =
            cfg.bound_column
                ? "," + format_number(distortionless_bound(spec, cfg.sample, n, cfg.digit_bound))
                : std::string();
        for (std::size_t i = 0; i < times.size(); ++i) {
            const ArrivalCounts counts = model.arrivals(k_n, times[i]);
            out += fmt::format("{},{},{},{},{},{},{}{}\n", n, format_number(times[i]),
                               format_number(l_n), format_number(k_n), counts.forward,
                               counts.backward, format_number(v[i]), bound);
        }
    }
    return out;
}

HyperResult hyper(const RunConfig& cfg, Window window, double eps) {
    if (!cfg.profile) {
        throw ConfigError("hyper needs a [profile] section", 1, 1);
    }
    const TerminatedLineSpec& spec = cfg.line;
    const ResponseAssembly assembly =
        assemble_response(spec, cfg.sample, *cfg.profile, cfg.digit_bound);
    if (window.first < assembly.n_min()) {
        throw ParameterError("window starts before the sample exists (n_min=" +
                             std::to_string(assembly.n_min()) + ")");
    }
    HyperResult result;
    const std::vector<double> values =
        kernels::parallel::sample(assembly.sequence().generator(), window.first, window.last);
    result.verdict = classify_values(values, window, eps);

    const bool with_bound = bound_applies(cfg);
    for (std::uint64_t n = window.first; n <= window.last; ++n) {
        HyperRow row{n, cfg.profile->at(n), values[n - window.first], std::nullopt};
        if (with_bound) row.bound = distortionless_bound(spec, cfg.sample, n, cfg.digit_bound);
        result.rows.push_back(row);
    }

    const DerivedQuantities q = derived_quantities(spec.params);
    ReflectionPair refl{0.0, 0.0};
    double divider = 1.0;
    if (q.z0) {
        refl = reflection_coefficients(spec.r_s, spec.r_r, *q.z0);
        divider = source_divider(spec.r_s, *q.z0);
    }
    const bool step = spec.source.kind() != SourceSpec::Kind::Table;
    if (q.regime == Regime::Lossless && step && std::abs(refl.sending * refl.receiving) < 1.0) {
        const double free =
            spec.source.amplitude() * (1.0 + refl.receiving) / (1.0 - refl.sending * refl.receiving);
        result.step_limit_divider_free = free;
        result.step_limit = divider * free;
    }

    std::string& r = result.report;
    r += fmt::format("sample: {}\n", join_digits(cfg.sample.digits()));
    r += fmt::format("termination: {}\n", join_digits(spec.term_digits));
    r += fmt::format("regime: {}\n", to_string(q.regime));
    r += fmt::format("profile: {}\n", cfg.profile->describe());
    r += fmt::format("window: {} {}\n", window.first, window.last);
    r += fmt::format("eps: {}\n", format_number(eps));
    if (q.z0) {
        r += fmt::format("r_s: {}\nr_r: {}\ndivider: {}\n", format_number(refl.sending),
                         format_number(refl.receiving), format_number(divider));
    }
    r += fmt::format("verdict: {}\n", to_string(result.verdict.kind));
    if (result.verdict.kind == VerdictKind::Appreciable) {
        r += fmt::format("standard_part: {}\n", format_number(result.verdict.standard_part));
        r += fmt::format("error_bar: {}\n", format_number(result.verdict.error_bar));
    }
    if (result.verdict.kind == VerdictKind::FilterAmbiguous) {
        std::string clusters;
        for (std::size_t i = 0; i < result.verdict.clusters.size(); ++i) {
            clusters += (i == 0 ? "" : " ") + format_number(result.verdict.clusters[i]);
        }
        r += fmt::format("clusters: {}\n", clusters);
    }
    if (result.step_limit) {
        r += fmt::format("step_limit: {}\n", format_number(*result.step_limit));
        r += fmt::format("step_limit_divider_free: {}\n",
                         format_number(*result.step_limit_divider_free));
    }
    const Evidence& ev = result.verdict.evidence;
    r += fmt::format("evidence: decay_slopes={} {} diff_slopes={} {} growth_slopes={} {} "
                     "sign_changes={}\n",
                     format_number(ev.decay_slope_first), format_number(ev.decay_slope_second),
                     format_number(ev.diff_slope_first), format_number(ev.diff_slope_second),
                     format_number(ev.growth_slope_first), format_number(ev.growth_slope_second),
                     ev.sign_changes);
    r += fmt::format("note: {}\n", result.verdict.note);
    if (result.verdict.kind == VerdictKind::Inconclusive) {
        r += "FLAG: inconclusive verdict\n";
    }

    result.csv = with_bound ? "n,t_n,v_n,bound_n\n" : "n,t_n,v_n\n";
    for (const HyperRow& row : result.rows) {
        result.csv += fmt::format("{},{},{}", row.n, format_number(row.t), format_number(row.v));
        if (row.bound) result.csv += "," + format_number(*row.bound);
        result.csv += "\n";
    }
    return result;
}

std::vector<XcheckRow> xcheck_rows(const RunConfig& cfg, std::uint64_t m_max) {
    const TerminatedLineSpec& spec = cfg.line;
    const std::uint64_t n = cfg.simulate_n;
    const FiniteLine line = truncated_line(spec, n);
    const double x = sample_distance(cfg.sample, spec, n, cfg.digit_bound);
    std::vector<XcheckRow> rows;
    for (const auto& s : cfg.s_samples) {
        const std::complex<double> w = spec.source.laplace(s);
        XcheckRow row{s, convergence_ratio(line, s), std::nullopt, {}, std::nullopt, 0.0};
        const LaplacePartialSum partial = laplace_partial_sum(line, x, s, w, m_max);
        row.partial = partial.value;
        row.last_pair = partial.last_pair_magnitude;
        if (row.ratio < 1.0) {
            row.closed = laplace_closed_form(line, x, s, w);
            const double denom = std::abs(*row.closed);
            row.rel_discrepancy = denom > 0.0 ? std::abs(*row.closed - row.partial) / denom
                                              : std::abs(row.partial);
        }
        rows.push_back(row);
    }
    return rows;
}

std::string xcheck_csv(const std::vector<XcheckRow>& rows) {
    std::string out =
        "s_re,s_im,ratio,closed_re,closed_im,partial_re,partial_im,rel_discrepancy,last_pair,status\n";
    for (const XcheckRow& row : rows) {
        out += fmt::format("{},{},{},", format_number(row.s.real()), format_number(row.s.imag()),
                           format_number(row.ratio));
        if (row.closed) {
            out += fmt::format("{},{},", format_number(row.closed->real()),
                               format_number(row.closed->imag()));
        } else {
            out += ",,";
        }
        out += fmt::format("{},{},", format_number(row.partial.real()),
                           format_number(row.partial.imag()));
        out += row.rel_discrepancy ? format_number(*row.rel_discrepancy) : std::string();
        out += fmt::format(",{},{}\n", format_number(row.last_pair),
                           row.closed ? "ok" : "violates-convergence");
    }
    return out;
}

}  // namespace tfline::commands
