#pragma once

#include "tfline/line_params.hpp"
#include "tfline/source.hpp"

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace tfline {

/// Position of a sample point inside an omega^mu-line:
/// omega^{mu-1} k_{mu-1} + ... + omega k_1 + k_0, digits stored lowest first.
class OrdinalIndex {
public:
    /// Throws ParameterError for an empty digit vector.
    explicit OrdinalIndex(std::vector<std::uint64_t> digits);
    OrdinalIndex(std::initializer_list<std::uint64_t> digits)
        : OrdinalIndex(std::vector<std::uint64_t>(digits)) {}

    std::size_t mu() const noexcept { return digits_.size(); }
    const std::vector<std::uint64_t>& digits() const noexcept { return digits_; }
    std::uint64_t operator[](std::size_t p) const { return digits_.at(p); }
    std::uint64_t leading() const noexcept { return digits_.back(); }

    /// True when some digit above k_0 is nonzero, i.e. the point lies beyond
    /// the initial omega-line.
    bool beyond_initial_line() const noexcept;

    std::string str() const;

    /// Transfinite order: lexicographic, most significant digit first.
    /// Throws DimensionError on rank mismatch.
    std::strong_ordering compare(const OrdinalIndex& other) const;

    friend bool operator==(const OrdinalIndex&, const OrdinalIndex&) = default;

private:
    std::vector<std::uint64_t> digits_;
};

bool precedes(const OrdinalIndex& a, const OrdinalIndex& b);

/// How the termination digits bound a sample index.
enum class DigitBound {
    /// 0 <= k_p <= l_p for every p.
    Strict,
    /// k_p <= l_p only while every higher digit equals its termination digit;
    /// an interior omega-line admits any k_0 (the index must not exceed the termination).
    Nested,
};

/// A terminated omega^mu-line: l_{mu-1} omega-blocks of rank mu-1, ..., l_0 sample spacings.
struct TerminatedLineSpec {
    std::vector<std::uint64_t> term_digits;  // l_0 ... l_{mu-1}
    double delta_x;
    double r_s;
    Resistance r_r;
    LineParams params;
    SourceSpec source;

    std::size_t mu() const noexcept { return term_digits.size(); }
    OrdinalIndex termination() const { return OrdinalIndex(term_digits); }

    /// Throws ParameterError when l_{mu-1} < 1, delta_x <= 0 or R_s is not finite and >= 0.
    void validate() const;
};

/// Throws DimensionError on rank mismatch.
bool validate_sample(const OrdinalIndex& idx, const TerminatedLineSpec& spec,
                     DigitBound bound = DigitBound::Strict);

/// sum_p n^p d_p, exact. Throws ParameterError on 64-bit overflow.
std::uint64_t digit_polynomial(const std::vector<std::uint64_t>& digits, std::uint64_t n);

/// L_n in units of delta_x.
std::uint64_t truncation_units(const TerminatedLineSpec& spec, std::uint64_t n);
/// K_n in units of delta_x (no materialization check).
std::uint64_t sample_units(const OrdinalIndex& idx, std::uint64_t n);

/// L_n = (sum_p n^p l_p) delta_x. Requires n >= 1.
double truncation_length(const TerminatedLineSpec& spec, std::uint64_t n);

/// max(1, k_0, ..., k_{mu-2}): each truncated block must contain the sub-index.
std::uint64_t materialization_threshold(const OrdinalIndex& idx);

/// Smallest n from which the sample exists in every truncation and K_n <= L_n.
/// Equals materialization_threshold for Strict-valid samples.
std::uint64_t minimal_truncation(const OrdinalIndex& idx, const TerminatedLineSpec& spec);

/// K_n = (sum_p n^p k_p) delta_x. Throws NotMaterializedError (carrying the
/// minimal admissible n) when the point is absent from the n-th truncation,
/// ParameterError when the sample is invalid for the spec under `bound`.
double sample_distance(const OrdinalIndex& idx, const TerminatedLineSpec& spec, std::uint64_t n,
                       DigitBound bound = DigitBound::Strict);

/// L_n - K_n.
double distance_to_receiving_end(const OrdinalIndex& idx, const TerminatedLineSpec& spec,
                                 std::uint64_t n, DigitBound bound = DigitBound::Strict);

struct AnomalyRow {
    std::uint64_t n;
    bool first_present;
    bool second_present;
    std::optional<double> first_distance;
    std::optional<double> second_distance;
};

/// Finite-truncation view of two points i < j (transfinite order).
struct AnomalyReport {
    std::vector<AnomalyRow> rows;  // n = 1 .. n_max
    /// Smallest n* with both points present and K_n(i) < K_n(j) for all n >= n*.
    std::uint64_t threshold;
    /// Truncations (n <= n_max) where j is present but i is not.
    std::vector<std::uint64_t> inverted;
};

/// Throws ParameterError unless `first` strictly precedes `second`.
AnomalyReport ordering_anomaly_window(const OrdinalIndex& first, const OrdinalIndex& second,
                                      const TerminatedLineSpec& spec, std::uint64_t n_max,
                                      DigitBound bound = DigitBound::Strict);

}  // namespace tfline
