#include "tfline/hyperreal.hpp"

#include "tfline/errors.hpp"
#include "tfline/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace tfline {

HyperrealSequence::HyperrealSequence(Generator generator, std::uint64_t n_min, std::string label)
    : generator_(std::move(generator)), n_min_(n_min), label_(std::move(label)) {
    if (!generator_) {
        throw ParameterError("hyperreal sequence needs a generator");
    }
}

HyperrealSequence HyperrealSequence::constant(double value, std::string label) {
    return HyperrealSequence([value](std::uint64_t) { return value; }, 1, std::move(label));
}

double HyperrealSequence::operator()(std::uint64_t n) const {
    if (n < n_min_) {
        throw ParameterError("sequence evaluated below n_min");
    }
    return generator_(n);
}

namespace {

const char* op_symbol(ArithmeticOp op) {
    switch (op) {
        case ArithmeticOp::Add: return "+";
        case ArithmeticOp::Subtract: return "-";
        case ArithmeticOp::Multiply: return "*";
        case ArithmeticOp::Divide: return "/";
    }
    return "?";
}

}  // namespace

HyperrealSequence arithmetic(const HyperrealSequence& a, const HyperrealSequence& b,
                             ArithmeticOp op, Window checked) {
    const std::uint64_t n_min = std::max(a.n_min(), b.n_min());
    if (op == ArithmeticOp::Divide) {
        const std::uint64_t first = std::max(checked.first, n_min);
        if (checked.last >= first) {
            const auto denom = kernels::parallel::sample(b.generator(), first, checked.last);
            std::vector<std::uint64_t> zeros;
            for (std::size_t i = 0; i < denom.size(); ++i) {
                if (denom[i] == 0.0) zeros.push_back(first + i);
            }
            if (!zeros.empty()) throw DivisionError(std::move(zeros));
        }
    }
    auto ga = a.generator();
    auto gb = b.generator();
    HyperrealSequence::Generator gen;
    switch (op) {
        case ArithmeticOp::Add:
            gen = [ga, gb](std::uint64_t n) { return ga(n) + gb(n); };
            break;
        case ArithmeticOp::Subtract:
            gen = [ga, gb](std::uint64_t n) { return ga(n) - gb(n); };
            break;
        case ArithmeticOp::Multiply:
            gen = [ga, gb](std::uint64_t n) { return ga(n) * gb(n); };
            break;
        case ArithmeticOp::Divide:
            gen = [ga, gb](std::uint64_t n) {
                const double d = gb(n);
                if (d == 0.0) throw DivisionError({n});
                return ga(n) / d;
            };
            break;
    }
    return HyperrealSequence(std::move(gen), n_min,
                             "(" + a.label() + " " + op_symbol(op) + " " + b.label() + ")");
}

HyperrealSequence operator+(const HyperrealSequence& a, const HyperrealSequence& b) {
    return arithmetic(a, b, ArithmeticOp::Add);
}
HyperrealSequence operator-(const HyperrealSequence& a, const HyperrealSequence& b) {
    return arithmetic(a, b, ArithmeticOp::Subtract);
}
HyperrealSequence operator*(const HyperrealSequence& a, const HyperrealSequence& b) {
    return arithmetic(a, b, ArithmeticOp::Multiply);
}
HyperrealSequence operator/(const HyperrealSequence& a, const HyperrealSequence& b) {
    return arithmetic(a, b, ArithmeticOp::Divide);
}

std::string_view to_string(VerdictKind kind) noexcept {
    switch (kind) {
        case VerdictKind::ZeroTail: return "ZERO_TAIL";
        case VerdictKind::Infinitesimal: return "INFINITESIMAL";
        case VerdictKind::Appreciable: return "APPRECIABLE";
        case VerdictKind::Unlimited: return "UNLIMITED";
        case VerdictKind::FilterAmbiguous: return "FILTER_AMBIGUOUS";
        case VerdictKind::Inconclusive: return "INCONCLUSIVE";
    }
    return "INCONCLUSIVE";
}

namespace {

// A magnitude keeps shrinking to zero if its envelope still falls at least
// like n^{-1/2} at the end of the window and the fall is not levelling off.
constexpr double kDecaySlope = -0.5;
// Increments must fall faster than 1/n for the partial sums to settle.
constexpr double kConvergentDiffSlope = -1.2;
// |x_n| growing at least this fast (log-log) counts as unbounded growth.
constexpr double kGrowthSlope = 0.1;
// A second-half slope below this fraction of the first-half slope is "levelling off".
constexpr double kFlatteningRatio = 0.5;
constexpr std::size_t kMinClusterSize = 3;

double loglog_slope(double a, double b, double na, double nb) {
    if (a == b) return 0.0;
    if (a == 0.0) return std::numeric_limits<double>::infinity();
    if (b == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(b / a) / std::log(nb / na);
}

// Right running max: env[i] = max_{k >= i} v[k].
std::vector<double> right_envelope(const std::vector<double>& v) {
    std::vector<double> env(v.size());
    double run = 0.0;
    for (std::size_t i = v.size(); i-- > 0;) {
        run = std::max(run, v[i]);
        env[i] = run;
    }
    return env;
}

std::vector<double> left_envelope(const std::vector<double>& v) {
    std::vector<double> env(v.size());
    double run = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        run = std::max(run, v[i]);
        env[i] = run;
    }
    return env;
}

struct Slopes {
    double first;
    double second;
};

// Slopes of env between indices (0, mid) and (mid, last) on the n axis.
// Log-log slopes over [0, end/2] and [end/2, end]. Right envelopes pass an
// end short of the window edge, where they would collapse to a single value.
Slopes half_slopes(const std::vector<double>& env, std::uint64_t n0, std::size_t last) {
    const std::size_t mid = last / 2;
    const auto n = [n0](std::size_t i) { return static_cast<double>(n0 + i); };
    return Slopes{loglog_slope(env[0], env[mid], n(0), n(mid)),
                  loglog_slope(env[mid], env[last], n(mid), n(last))};
}

bool keeps_decaying(const Slopes& s, double limit) {
    if (s.second == -std::numeric_limits<double>::infinity()) return true;
    return s.second <= limit && s.second <= kFlatteningRatio * s.first;
}

struct Cluster {
    double representative;
    std::size_t members;
    std::size_t runs;
};

// Clusters of the tail values: split the sorted values at gaps > eps.
// Returns an empty vector unless every value falls in a cluster of at least
// kMinClusterSize members.
std::vector<Cluster> tail_clusters(const std::vector<double>& tail, double eps) {
    std::vector<std::size_t> order(tail.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return tail[a] < tail[b]; });
    std::vector<std::size_t> label(tail.size());
    std::vector<std::vector<double>> groups;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const double v = tail[order[k]];
        if (k == 0 || v - tail[order[k - 1]] > eps) groups.emplace_back();
        groups.back().push_back(v);
        label[order[k]] = groups.size() - 1;
    }
    std::vector<Cluster> out;
    for (const auto& g : groups) {
        if (g.size() < kMinClusterSize) return {};
        out.push_back(Cluster{g[(g.size() - 1) / 2], g.size(), 0});
    }
    for (std::size_t i = 0; i < tail.size(); ++i) {
        if (i == 0 || label[i] != label[i - 1]) ++out[label[i]].runs;
    }
    return out;
}

}  // namespace

ClassificationVerdict classify_values(const std::vector<double>& values, Window window,
                                      double eps) {
    if (window.last < window.first || window.last - window.first < kMinWindowSpan) {
        throw ParameterError("classification window needs last - first >= 8");
    }
    if (values.size() != window.size()) {
        throw ParameterError("value count does not match the window");
    }
    if (!(eps > 0.0)) {
        throw ParameterError("eps must be positive");
    }

    ClassificationVerdict verdict;
    Evidence& ev = verdict.evidence;
    ev.window = window;
    ev.first_value = values.front();
    ev.last_value = values.back();

    for (double v : values) {
        if (std::isnan(v)) {
            verdict.kind = VerdictKind::Inconclusive;
            verdict.note = "sequence has NaN values in the window";
            return verdict;
        }
    }
    std::vector<double> mag(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        mag[i] = std::abs(values[i]);
        ev.max_abs = std::max(ev.max_abs, mag[i]);
        if (i > 0 && std::signbit(values[i]) != std::signbit(values[i - 1]) && values[i] != 0.0 &&
            values[i - 1] != 0.0) {
            ++ev.sign_changes;
        }
    }
    if (std::isinf(ev.max_abs)) {
        verdict.kind = VerdictKind::Unlimited;
        verdict.note = "sequence reaches infinity in the window";
        return verdict;
    }
    if (ev.max_abs == 0.0) {
        verdict.kind = VerdictKind::ZeroTail;
        verdict.note = "every value in the window is exactly 0";
        return verdict;
    }

    const std::size_t last = values.size() - 1;
    const std::size_t q3 = (3 * last) / 4;
    const std::size_t half = values.size() / 2;

    const std::vector<double> env = right_envelope(mag);
    const Slopes decay = half_slopes(env, window.first, q3);
    ev.decay_slope_first = decay.first;
    ev.decay_slope_second = decay.second;
    ev.final_envelope = env[q3];

    std::vector<double> diffs(last);
    for (std::size_t i = 0; i < last; ++i) diffs[i] = std::abs(values[i + 1] - values[i]);
    const std::vector<double> denv = right_envelope(diffs);
    const Slopes dslope = half_slopes(denv, window.first, std::min(q3, denv.size() - 1));
    ev.diff_slope_first = dslope.first;
    ev.diff_slope_second = dslope.second;

    const std::vector<double> genv = left_envelope(mag);
    const Slopes growth = half_slopes(genv, window.first, last);
    ev.growth_slope_first = growth.first;
    ev.growth_slope_second = growth.second;

    // Recurring accumulation points in the second half of the window.
    const std::vector<double> tail(values.begin() + static_cast<std::ptrdiff_t>(half), values.end());
    const std::vector<Cluster> clusters = tail_clusters(tail, eps);
    if (clusters.size() >= 2 &&
        std::all_of(clusters.begin(), clusters.end(), [](const Cluster& c) { return c.runs >= 2; })) {
        verdict.kind = VerdictKind::FilterAmbiguous;
        for (const auto& c : clusters) verdict.clusters.push_back(c.representative);
        verdict.note = "value depends on the choice of nonprincipal ultrafilter";
        return verdict;
    }
    if (clusters.size() == 1) {
        const double c = clusters.front().representative;
        if (std::abs(c) < eps) {
            verdict.kind = VerdictKind::Infinitesimal;
            verdict.note = "tail settled within eps of 0";
            return verdict;
        }
        verdict.kind = VerdictKind::Appreciable;
        verdict.standard_part = c;
        for (double v : tail) verdict.error_bar = std::max(verdict.error_bar, std::abs(v - c));
        verdict.note = "tail constant within eps";
        return verdict;
    }

    if (env[q3] < eps || keeps_decaying(decay, kDecaySlope)) {
        verdict.kind = VerdictKind::Infinitesimal;
        verdict.note = env[q3] < eps ? "envelope below eps" : "envelope keeps decaying";
        return verdict;
    }

    if (genv[half] > 0.0 && growth.second >= kGrowthSlope &&
        (genv.front() == 0.0 || growth.second >= kFlatteningRatio * growth.first)) {
        verdict.kind = VerdictKind::Unlimited;
        verdict.note = "magnitude keeps growing";
        return verdict;
    }

    const bool diffs_vanish = denv[q3] == 0.0;
    if (diffs_vanish || keeps_decaying(dslope, kConvergentDiffSlope)) {
        const double estimate = values.back();
        double spread = 0.0;
        for (std::size_t i = q3; i <= last; ++i) {
            spread = std::max(spread, std::abs(values[i] - estimate));
        }
        // Remaining drift if increments keep falling like n^{slope}.
        double remainder = 0.0;
        if (!diffs_vanish && std::isfinite(dslope.second)) {
            remainder = denv[q3] * static_cast<double>(window.last) / (-dslope.second - 1.0);
        }
        if (std::abs(estimate) >= eps) {
            verdict.kind = VerdictKind::Appreciable;
            verdict.standard_part = estimate;
            verdict.error_bar = std::max(spread, remainder);
            verdict.note = "increments vanish; limit estimated from the window end";
            return verdict;
        }
    }

    verdict.kind = VerdictKind::Inconclusive;
    verdict.note = "no verdict supported by the window";
    return verdict;
}

ClassificationVerdict classify(const HyperrealSequence& seq, Window window, double eps) {
    if (window.last < window.first || window.last - window.first < kMinWindowSpan) {
        throw ParameterError("classification window needs last - first >= 8");
    }
    if (window.first < seq.n_min()) {
        throw ParameterError("classification window starts below the sequence's n_min");
    }
    const auto values = kernels::parallel::sample(seq.generator(), window.first, window.last);
    return classify_values(values, window, eps);
}

}  // namespace tfline
