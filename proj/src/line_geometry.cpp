#include "tfline/line_geometry.hpp"

#include "tfline/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tfline {

OrdinalIndex::OrdinalIndex(std::vector<std::uint64_t> digits) : digits_(std::move(digits)) {
    if (digits_.empty()) {
        throw ParameterError("ordinal index needs at least one digit");
    }
}

bool OrdinalIndex::beyond_initial_line() const noexcept {
    return std::any_of(digits_.begin() + 1, digits_.end(), [](std::uint64_t d) { return d != 0; });
}

std::string OrdinalIndex::str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t p = 0; p < digits_.size(); ++p) {
        os << (p == 0 ? "" : ",") << digits_[p];
    }
    os << ")";
    return os.str();
}

std::strong_ordering OrdinalIndex::compare(const OrdinalIndex& other) const {
    if (mu() != other.mu()) {
        throw DimensionError("ordinal ranks differ: " + std::to_string(mu()) + " vs " +
                             std::to_string(other.mu()));
    }
    for (std::size_t p = mu(); p-- > 0;) {
        if (digits_[p] != other.digits_[p]) {
            return digits_[p] <=> other.digits_[p];
        }
    }
    return std::strong_ordering::equal;
}

bool precedes(const OrdinalIndex& a, const OrdinalIndex& b) {
    return a.compare(b) == std::strong_ordering::less;
}

void TerminatedLineSpec::validate() const {
    if (term_digits.empty()) {
        throw ParameterError("termination needs at least one digit");
    }
    if (term_digits.back() < 1) {
        throw ParameterError("leading termination digit l_{mu-1} must be >= 1");
    }
    if (!(delta_x > 0.0) || !std::isfinite(delta_x)) {
        throw ParameterError("delta_x must be positive and finite");
    }
    if (!(r_s >= 0.0) || !std::isfinite(r_s)) {
        throw ParameterError("sending-end resistance must satisfy 0 <= R_s < inf");
    }
}

bool validate_sample(const OrdinalIndex& idx, const TerminatedLineSpec& spec, DigitBound bound) {
    if (idx.mu() != spec.mu()) {
        throw DimensionError("sample rank " + std::to_string(idx.mu()) +
                             " does not match termination rank " + std::to_string(spec.mu()));
    }
    if (bound == DigitBound::Strict) {
        for (std::size_t p = 0; p < idx.mu(); ++p) {
            if (idx[p] > spec.term_digits[p]) return false;
        }
        return true;
    }
    return idx.compare(spec.termination()) != std::strong_ordering::greater;
}

namespace {

using i128 = __int128;

i128 checked_mul(i128 a, i128 b) {
    i128 out = 0;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw ParameterError("digit polynomial overflows");
    }
    return out;
}

i128 checked_add(i128 a, i128 b) {
    i128 out = 0;
    if (__builtin_add_overflow(a, b, &out)) {
        throw ParameterError("digit polynomial overflows");
    }
    return out;
}

// Horner evaluation of sum_p coeffs[p] n^p.
i128 eval_signed(const std::vector<i128>& coeffs, std::uint64_t n) {
    i128 acc = 0;
    for (std::size_t p = coeffs.size(); p-- > 0;) {
        acc = checked_add(checked_mul(acc, static_cast<i128>(n)), coeffs[p]);
    }
    return acc;
}

// Smallest n* >= start such that D(n) > 0 (or >= 0 when !strict) for every n >= n*.
// D must be eventually positive: its leading nonzero coefficient is positive,
// or D is identically zero (only allowed when !strict).
std::uint64_t eventual_sign_threshold(const std::vector<i128>& coeffs, std::uint64_t start,
                                      bool strict) {
    std::size_t lead = coeffs.size();
    while (lead > 0 && coeffs[lead - 1] == 0) --lead;
    if (lead == 0) {
        if (strict) throw ParameterError("difference polynomial is identically zero");
        return start;
    }
    const i128 top = coeffs[lead - 1];
    if (top < 0) throw ParameterError("difference polynomial is eventually negative");
    // Cauchy bound: every real root r satisfies |r| < 1 + max|c_p| / c_lead.
    i128 max_low = 0;
    for (std::size_t p = 0; p + 1 < lead; ++p) {
        max_low = std::max(max_low, coeffs[p] < 0 ? -coeffs[p] : coeffs[p]);
    }
    const i128 bound = 1 + max_low / top + 1;
    if (bound > static_cast<i128>(UINT64_MAX / 2)) {
        throw ParameterError("ordering threshold out of range");
    }
    const auto upper = static_cast<std::uint64_t>(bound);
    for (std::uint64_t n = std::max(upper, start); n >= start && n > 0; --n) {
        const i128 v = eval_signed(coeffs, n);
        if (strict ? v <= 0 : v < 0) {
            return n + 1;
        }
        if (n == start) break;
    }
    return start;
}

std::vector<i128> difference(const std::vector<std::uint64_t>& hi,
                             const std::vector<std::uint64_t>& lo) {
    std::vector<i128> out(hi.size());
    for (std::size_t p = 0; p < hi.size(); ++p) {
        out[p] = static_cast<i128>(hi[p]) - static_cast<i128>(lo[p]);
    }
    return out;
}

}  // namespace

std::uint64_t digit_polynomial(const std::vector<std::uint64_t>& digits, std::uint64_t n) {
    std::uint64_t acc = 0;
    for (std::size_t p = digits.size(); p-- > 0;) {
        if (__builtin_mul_overflow(acc, n, &acc) || __builtin_add_overflow(acc, digits[p], &acc)) {
            throw ParameterError("digit polynomial overflows 64 bits");
        }
    }
    return acc;
}

std::uint64_t truncation_units(const TerminatedLineSpec& spec, std::uint64_t n) {
    if (n < 1) throw ParameterError("truncation index n must be >= 1");
    return digit_polynomial(spec.term_digits, n);
}

std::uint64_t sample_units(const OrdinalIndex& idx, std::uint64_t n) {
    return digit_polynomial(idx.digits(), n);
}

double truncation_length(const TerminatedLineSpec& spec, std::uint64_t n) {
    return static_cast<double>(truncation_units(spec, n)) * spec.delta_x;
}

std::uint64_t materialization_threshold(const OrdinalIndex& idx) {
    std::uint64_t n = 1;
    for (std::size_t p = 0; p + 1 < idx.mu(); ++p) {
        n = std::max(n, idx[p]);
    }
    return n;
}

std::uint64_t minimal_truncation(const OrdinalIndex& idx, const TerminatedLineSpec& spec) {
    const std::uint64_t start = materialization_threshold(idx);
    if (idx.mu() != spec.mu()) {
        throw DimensionError("sample rank does not match termination rank");
    }
    if (idx.compare(spec.termination()) == std::strong_ordering::greater) {
        throw ParameterError("sample " + idx.str() + " lies beyond the receiving end");
    }
    return eventual_sign_threshold(difference(spec.term_digits, idx.digits()), start, false);
}

double sample_distance(const OrdinalIndex& idx, const TerminatedLineSpec& spec, std::uint64_t n,
                       DigitBound bound) {
    if (!validate_sample(idx, spec, bound)) {
        throw ParameterError("sample " + idx.str() + " is not a point of the terminated line");
    }
    const std::uint64_t minimal = minimal_truncation(idx, spec);
    if (n < minimal) {
        throw NotMaterializedError(n, minimal);
    }
    return static_cast<double>(sample_units(idx, n)) * spec.delta_x;
}

double distance_to_receiving_end(const OrdinalIndex& idx, const TerminatedLineSpec& spec,
                                 std::uint64_t n, DigitBound bound) {
    (void)sample_distance(idx, spec, n, bound);
    return static_cast<double>(truncation_units(spec, n) - sample_units(idx, n)) * spec.delta_x;
}

AnomalyReport ordering_anomaly_window(const OrdinalIndex& first, const OrdinalIndex& second,
                                      const TerminatedLineSpec& spec, std::uint64_t n_max,
                                      DigitBound bound) {
    if (!precedes(first, second)) {
        throw ParameterError("ordering window needs first " + first.str() + " to precede second " +
                             second.str());
    }
    if (!validate_sample(first, spec, bound) || !validate_sample(second, spec, bound)) {
        throw ParameterError("both samples must belong to the terminated line");
    }
    const std::uint64_t min_first = minimal_truncation(first, spec);
    const std::uint64_t min_second = minimal_truncation(second, spec);

    AnomalyReport report;
    report.threshold = eventual_sign_threshold(difference(second.digits(), first.digits()),
                                               std::max(min_first, min_second), true);
    report.rows.reserve(n_max);
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        AnomalyRow row{n, n >= min_first, n >= min_second, std::nullopt, std::nullopt};
        if (row.first_present) {
            row.first_distance = static_cast<double>(sample_units(first, n)) * spec.delta_x;
        }
        if (row.second_present) {
            row.second_distance = static_cast<double>(sample_units(second, n)) * spec.delta_x;
        }
        if (row.second_present && !row.first_present) {
            report.inverted.push_back(n);
        }
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace tfline
