// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include "support.hpp"

#include "tfline/commands.hpp"
#include "tfline/config.hpp"
#include "tfline/errors.hpp"
#include "tfline/finite_solver.hpp"
#include "tfline/kernels.hpp"
#include "tfline/transfinite.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace tfline;
using tfline::testing::make_spec;
using tfline::testing::poly_oracle;
using tfline::testing::unit_line;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

std::string str(double v) { return commands::format_number(v); }

RunConfig shorted_line(const TimeProfile& profile) {
    RunConfig cfg = parse_config_string(R"([line]
termination = 0 2
delta_x = 1
r_s = 0
r_r = 0
[params]
l = 1
c = 1
[sample]
digits = 0 1
)");
    cfg.profile = profile;
    return cfg;
}

RunConfig open_line(const TimeProfile& profile) {
    RunConfig cfg = parse_config_string(R"([line]
termination = 0 2
delta_x = 1
r_s = 3
r_r = inf
[params]
l = 1
c = 1
[sample]
digits = 0 1
)");
    cfg.profile = profile;
    return cfg;
}

// Alternating response of a line shorted at both ends.
Outcome shorted_ends() {
    Outcome out;
    const RunConfig sq = shorted_line(TimeProfile::superlinear(1.0, 2.0));
    const commands::HyperResult r = commands::hyper(sq, kDefaultWindow, kDefaultEps);
    out.require(r.verdict.kind == VerdictKind::FilterAmbiguous,
                "verdict " + std::string(to_string(r.verdict.kind)));
    out.require(r.verdict.clusters == std::vector<double>{0.0, 1.0}, "clusters are not {0, 1}");
    out.require(r.report.find("clusters: 0 1\n") != std::string::npos, "report lacks clusters");

    const RunConfig lin = shorted_line(TimeProfile::linear(1.7, 0.3));
    const ResponseAssembly a = assemble_response(lin.line, lin.sample, *lin.profile);
    for (std::uint64_t n = 1; n <= 400; ++n) {
        const double v = a.sequence()(n);
        out.require(v == 0.0 || v == 1.0, "linear profile value " + str(v) + " at n=" + std::to_string(n));
    }
    if (out.ok) out.detail = "clusters {0, 1}; linear-profile values in {0, 1} for n <= 400";
    return out;
}

// Open receiving end, R_s = 3, Z0 = 1.
Outcome open_end() {
    Outcome out;
    const RunConfig sq = open_line(TimeProfile::superlinear(1.0, 2.0));
    const commands::HyperResult r2 = commands::hyper(sq, kDefaultWindow, kDefaultEps);
    out.require(r2.verdict.kind == VerdictKind::Appreciable,
                "t=n^2 verdict " + std::string(to_string(r2.verdict.kind)));

    const RunConfig cube = open_line(TimeProfile::superlinear(1.0, 3.0));
    const commands::HyperResult r3 = commands::hyper(cube, kDefaultWindow, kDefaultEps);
    out.require(r3.verdict.kind == VerdictKind::Appreciable,
                "t=n^3 verdict " + std::string(to_string(r3.verdict.kind)));
    out.require(r3.step_limit_divider_free && *r3.step_limit_divider_free == 4.0,
                "divider-free limit is not 4");
    out.require(r3.step_limit && *r3.step_limit == 1.0, "divider limit is not 1");
    double worst = 0.0;
    for (const auto& row : r3.rows) worst = std::max(worst, std::abs(row.v - 1.0));
    out.require(worst < 1e-9, "window values deviate from 1 by " + str(worst));
    out.require(std::abs(r3.verdict.standard_part - 1.0) < 1e-9, "standard part " + str(r3.verdict.standard_part));
    out.require(r3.report.find("step_limit: 1\n") != std::string::npos &&
                    r3.report.find("step_limit_divider_free: 4\n") != std::string::npos,
                "report does not print both limits");
    if (out.ok) {
        out.detail = "standard part " + str(r3.verdict.standard_part) + " (max |v-1| = " + str(worst) +
                     "), divider-free 4";
    }
    return out;
}

// Random distortionless lines: bound dominance and infinitesimal verdicts.
Outcome distortionless_random() {
    Outcome out;
    std::mt19937_64 rng(20241);
    std::uniform_real_distribution<double> ad(0.05, 0.5);
    std::uniform_int_distribution<std::uint64_t> l1d(1, 4);
    std::uniform_real_distribution<double> dxd(0.25, 2.0);
    std::uniform_real_distribution<double> res(0.0, 4.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uint64_t checked = 0;
    for (int trial = 0; trial < 100 && out.ok; ++trial) {
        const double dx = dxd(rng);
        const double alpha = ad(rng) / dx;
        const double lc = 0.5 + 3.0 * unit(rng);  // l = c = lc, so u = 1/lc
        const double l = lc;
        const double c = lc;
        const double r = alpha / std::sqrt(l * c) * l;
        const double g = r * c / l;
        const std::uint64_t l1 = l1d(rng);
        const std::uint64_t k1 = std::uniform_int_distribution<std::uint64_t>(1, l1)(rng);
        const std::uint64_t l0 = std::uniform_int_distribution<std::uint64_t>(0, 5)(rng);
        const std::uint64_t k0 = std::uniform_int_distribution<std::uint64_t>(0, l0)(rng);
        const Resistance r_r = trial % 4 == 0 ? Resistance::open() : Resistance(res(rng));
        const SourceSpec src = trial % 3 == 0
                                   ? SourceSpec::table({0.0, 2.0, 5.0}, {1.0, -0.5, 0.75})
                                   : SourceSpec::scaled_step(0.5 + unit(rng));
        const auto spec = make_spec({l0, l1}, dx, res(rng), r_r, LineParams(r, l, g, c), src);
        if (spec.params.regime() != Regime::Distortionless) {
            out.require(false, "trial " + std::to_string(trial) + " not distortionless");
            break;
        }
        const OrdinalIndex idx{k0, k1};
        // Profiles late enough for the first front: t_n >= K_n / u.
        const double u = 1.0 / lc;
        const TimeProfile profile =
            trial % 2 == 0
                ? TimeProfile::linear((static_cast<double>(l1) * dx / u) * (1.0 + 3.0 * unit(rng)),
                                      static_cast<double>(l0) * dx / u)
                : TimeProfile::superlinear(dx / u, 1.5 + unit(rng));
        const ResponseAssembly a = assemble_response(spec, idx, profile);
        const auto values = kernels::parallel::sample(a.sequence().generator(), 32, 96);
        for (std::uint64_t n = 32; n <= 96; ++n) {
            const double v = values[n - 32];
            const double bound = distortionless_bound(spec, idx, n);
            ++checked;
            out.require(std::abs(v) <= bound, "trial " + std::to_string(trial) + " n=" +
                                                  std::to_string(n) + ": |v|=" + str(std::abs(v)) +
                                                  " > bound " + str(bound));
        }
        const ClassificationVerdict verdict = classify_values(values, kDefaultWindow, kDefaultEps);
        out.require(verdict.kind == VerdictKind::Infinitesimal,
                    "trial " + std::to_string(trial) + " verdict " +
                        std::string(to_string(verdict.kind)) + " (" + verdict.note + ")");
    }
    if (out.ok) out.detail = "100 trials, " + std::to_string(checked) + " bound checks, all INFINITESIMAL";
    return out;
}

// Laplace closed form against 60-term partial sums.
Outcome laplace_crosscheck() {
    Outcome out;
    const FiniteLine line{7.0, LineParams(0.05, 1.0, 0.05, 1.0), 0.2, Resistance::open()};
    double worst = 0.0;
    int compared = 0;
    for (int i = 1; i <= 20; ++i) {
        const std::complex<double> s(0.25 * i, 0.0);
        const auto w = SourceSpec::unit_step().laplace(s);
        const double ratio = convergence_ratio(line, s);
        if (!(ratio < 0.9)) continue;
        const auto closed = laplace_closed_form(line, 3.0, s, w);
        const auto partial = laplace_partial_sum(line, 3.0, s, w, 60);
        const double rel = std::abs(closed - partial.value) / std::abs(closed);
        worst = std::max(worst, rel);
        ++compared;
        out.require(rel < 1e-10, "s=" + str(s.real()) + " relative discrepancy " + str(rel));
    }
    out.require(compared >= 15, "only " + std::to_string(compared) + " samples under ratio 0.9");
    if (out.ok) {
        out.detail = std::to_string(compared) + " samples, worst relative discrepancy " + str(worst);
    }
    return out;
}

// Term counts against the floor formulas, and causality.
Outcome term_counts() {
    Outcome out;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> len(0.5, 50.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> speed(0.1, 3.0);
    for (int trial = 0; trial < 1000 && out.ok; ++trial) {
        const double L = len(rng);
        const double x = unit(rng) * L;
        const double u = speed(rng);
        const double t = unit(rng) * 40.0 * L / u;
        const double lc = 1.0 / u;
        const FiniteLine line{L, LineParams(0.0, lc, 0.0, lc), 0.5 + unit(rng), Resistance(unit(rng) * 3.0)};
        const TermEnumeration e = enumerate_terms(line, x, t);
        const double ut = u * t;
        const std::uint64_t fwd =
            ut >= x ? static_cast<std::uint64_t>(std::floor((ut - x) / (2.0 * L))) + 1 : 0;
        const std::uint64_t bwd =
            ut >= 2.0 * L - x ? static_cast<std::uint64_t>(std::floor((ut - (2.0 * L - x)) / (2.0 * L))) + 1
                              : 0;
        std::uint64_t fwd_terms = 0;
        for (const auto& term : e.terms) fwd_terms += term.direction == Direction::Forward;
        const std::string tag = "trial " + std::to_string(trial);
        out.require(e.counts.forward == fwd, tag + " forward " + std::to_string(e.counts.forward) +
                                                 " vs " + std::to_string(fwd));
        out.require(e.counts.backward == bwd, tag + " backward " + std::to_string(e.counts.backward) +
                                                  " vs " + std::to_string(bwd));
        out.require(fwd_terms == fwd && e.terms.size() == fwd + bwd, tag + " term list size");
        const double early = unit(rng) * x / u * 0.999999;
        out.require(voltage_response(line, x, early, SourceSpec::unit_step()) == 0.0,
                    tag + " nonzero before the first front");
    }
    if (out.ok) out.detail = "1000 trials";
    return out;
}

// Ordering anomaly between transfinitely ordered points.
Outcome anomaly_ordering() {
    Outcome out;
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::uint64_t> digit(0, 200);
    const auto spec = make_spec({200, 200}, 1.0, 1.0, Resistance(1.0), unit_line());
    int constructed_inversions = 0;
    auto check_pair = [&](OrdinalIndex i, OrdinalIndex j) {
        const AnomalyReport rep = ordering_anomaly_window(i, j, spec, 50);
        const std::uint64_t n_star = rep.threshold;
        for (std::uint64_t n = n_star; n <= n_star + 2000; ++n) {
            const std::uint64_t ki = poly_oracle(i.digits(), n);
            const std::uint64_t kj = poly_oracle(j.digits(), n);
            const bool present = n >= materialization_threshold(i) && n >= materialization_threshold(j);
            if (!present || !(ki < kj)) {
                out.require(false, i.str() + " vs " + j.str() + " fails at n=" + std::to_string(n) +
                                       " >= n*=" + std::to_string(n_star));
                return;
            }
        }
        if (n_star > 1) {
            const std::uint64_t n = n_star - 1;
            const bool present = n >= materialization_threshold(i) && n >= materialization_threshold(j);
            out.require(!present || poly_oracle(i.digits(), n) >= poly_oracle(j.digits(), n),
                        i.str() + " vs " + j.str() + ": n* is not minimal");
        }
        if (!rep.inverted.empty()) ++constructed_inversions;
    };
    int pairs = 0;
    while (pairs < 100 && out.ok) {
        OrdinalIndex a{digit(rng), digit(rng)};
        OrdinalIndex b{digit(rng), digit(rng)};
        if (a == b) continue;
        if (precedes(b, a)) std::swap(a, b);
        check_pair(a, b);
        ++pairs;
    }
    // j present before i: large k_0 in i, larger k_1 in j.
    const int before = constructed_inversions;
    for (std::uint64_t k = 0; k < 20 && out.ok; ++k) {
        const OrdinalIndex i{120 + 4 * k, k};
        const OrdinalIndex j{k, k + 1};
        check_pair(i, j);
    }
    out.require(constructed_inversions - before == 20, "constructed cases did not show inversion");
    if (out.ok) {
        out.detail = "100 random pairs + 20 constructed inversions, thresholds verified to n*+2000";
    }
    return out;
}

// Rank-3 geometry and infinitesimal response.
Outcome rank_three() {
    Outcome out;
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::uint64_t> digit(0, 9);
    for (int trial = 0; trial < 200 && out.ok; ++trial) {
        std::vector<std::uint64_t> l{digit(rng), digit(rng), 1 + digit(rng)};
        std::vector<std::uint64_t> k(3);
        for (int p = 0; p < 3; ++p) k[p] = std::uniform_int_distribution<std::uint64_t>(0, l[p])(rng);
        const double dx = 0.125 * static_cast<double>(1 + trial % 8);
        const auto spec = make_spec(l, dx, 1.0, Resistance(1.0), unit_line());
        const OrdinalIndex idx(k);
        for (std::uint64_t n = minimal_truncation(idx, spec); n <= 300; n += 7) {
            out.require(truncation_length(spec, n) == static_cast<double>(poly_oracle(l, n)) * dx,
                        "L_n mismatch");
            out.require(sample_distance(idx, spec, n) == static_cast<double>(poly_oracle(k, n)) * dx,
                        "K_n mismatch");
        }
    }

    std::uniform_real_distribution<double> ad(0.05, 0.5);
    int runs = 0;
    for (int trial = 0; trial < 20 && out.ok; ++trial) {
        const double dx = 0.5;
        const double alpha = ad(rng) / dx;
        const std::vector<std::uint64_t> l{digit(rng), digit(rng), 1 + digit(rng) % 3};
        const std::vector<std::uint64_t> k{std::uniform_int_distribution<std::uint64_t>(0, l[0])(rng),
                                           std::uniform_int_distribution<std::uint64_t>(0, l[1])(rng),
                                           std::uniform_int_distribution<std::uint64_t>(1, l[2])(rng)};
        const auto spec = make_spec(l, dx, 0.5, Resistance(2.0), unit_line(alpha));
        const OrdinalIndex idx(k);
        // The classifier needs nonzero values at the window start: keep
        // e^{-alpha K_n} representable at n = 12.
        const ResponseAssembly a =
            assemble_response(spec, idx, TimeProfile::superlinear(dx, 3.0));
        const Window w{12, 40};
        const auto values = kernels::parallel::sample(a.sequence().generator(), w.first, w.last);
        const ClassificationVerdict v = classify_values(values, w, kDefaultEps);
        out.require(v.kind == VerdictKind::Infinitesimal,
                    "rank-3 run " + idx.str() + " verdict " + std::string(to_string(v.kind)));
        for (std::uint64_t n = w.first; n <= w.last; ++n) {
            out.require(std::abs(values[n - w.first]) <= distortionless_bound(spec, idx, n),
                        "rank-3 bound violated");
        }
        ++runs;
    }
    if (out.ok) {
        out.detail = "200 geometry trials exact; " + std::to_string(runs) + " distortionless runs INFINITESIMAL";
    }
    return out;
}

// Byte-identical CSV across repeated runs.
Outcome determinism() {
    Outcome out;
    int files = 0;
    for (const char* name : {"open_end_step.ini", "shorted_ends.ini", "distortionless.ini", "rank3.ini"}) {
        const RunConfig cfg = load_config(std::string(TFLINE_CONFIG_DIR) + "/" + name);
        const std::string sim_a = commands::simulate_csv(cfg, {cfg.simulate_n, cfg.simulate_n + 5});
        const std::string sim_b = commands::simulate_csv(cfg, {cfg.simulate_n, cfg.simulate_n + 5});
        const auto hyp_a = commands::hyper(cfg, cfg.window, cfg.eps);
        const auto hyp_b = commands::hyper(cfg, cfg.window, cfg.eps);
        out.require(sim_a == sim_b, std::string(name) + " simulate differs");
        out.require(hyp_a.csv == hyp_b.csv && hyp_a.report == hyp_b.report,
                    std::string(name) + " hyper differs");
        files += 2;
    }
    if (out.ok) out.detail = std::to_string(files) + " CSV outputs identical across reruns";
    return out;
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"shorted ends alternate: FILTER_AMBIGUOUS {0,1}", shorted_ends},
        {"open end step: APPRECIABLE, limit 1, divider-free 4", open_end},
        {"distortionless bound and INFINITESIMAL verdicts", distortionless_random},
        {"Laplace closed form vs partial sums", laplace_crosscheck},
        {"term counts and causality", term_counts},
        {"ordering anomaly thresholds", anomaly_ordering},
        {"rank-3 geometry and decay", rank_three},
        {"deterministic CSV", determinism},
    };
    int failures = 0;
    int index = 1;
    for (const auto& [title, check] : criteria) {
        Outcome result;
        try {
            result = check();
        } catch (const std::exception& e) {
            result.ok = false;
            result.detail = std::string("exception: ") + e.what();
        }
        std::printf("%s %d %s: %s\n", result.ok ? "PASS" : "FAIL", index, title, result.detail.c_str());
        failures += result.ok ? 0 : 1;
        ++index;
    }
    std::fflush(stdout);
    return failures == 0 ? 0 : 1;
}
