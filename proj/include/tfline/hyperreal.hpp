#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace tfline {

/// Representative sequence n -> x_n of a hyperreal, defined for n >= n_min.
/// Two sequences that agree on a tail represent the same hyperreal.
///
/// The generator must be pure: the same n always yields the same value, and
/// it may be called concurrently from several threads.
class HyperrealSequence {
public:
    using Generator = std::function<double(std::uint64_t)>;

    HyperrealSequence(Generator generator, std::uint64_t n_min, std::string label = {});

    /// Constant sequence.
    static HyperrealSequence constant(double value, std::string label = {});

    std::uint64_t n_min() const noexcept { return n_min_; }
    const std::string& label() const noexcept { return label_; }

    /// Throws ParameterError for n < n_min.
    double operator()(std::uint64_t n) const;

    const Generator& generator() const noexcept { return generator_; }

private:
    Generator generator_;
    std::uint64_t n_min_;
    std::string label_;
};

/// Closed window [first, last] of truncation indices.
struct Window {
    std::uint64_t first = 32;
    std::uint64_t last = 96;

    std::uint64_t size() const noexcept { return last - first + 1; }
};

inline constexpr Window kDefaultWindow{32, 96};
inline constexpr double kDefaultEps = 1e-9;

enum class ArithmeticOp { Add, Subtract, Multiply, Divide };

/// Pointwise combination with n_min = max of the inputs. For division the
/// denominator is checked on `checked` and a DivisionError lists every zero.
HyperrealSequence arithmetic(const HyperrealSequence& a, const HyperrealSequence& b,
                             ArithmeticOp op, Window checked = kDefaultWindow);

HyperrealSequence operator+(const HyperrealSequence& a, const HyperrealSequence& b);
HyperrealSequence operator-(const HyperrealSequence& a, const HyperrealSequence& b);
HyperrealSequence operator*(const HyperrealSequence& a, const HyperrealSequence& b);
HyperrealSequence operator/(const HyperrealSequence& a, const HyperrealSequence& b);

enum class VerdictKind {
    ZeroTail,
    Infinitesimal,
    Appreciable,
    Unlimited,
    FilterAmbiguous,
    Inconclusive,
};

std::string_view to_string(VerdictKind kind) noexcept;

/// Numbers the classifier looked at, reported with every verdict.
struct Evidence {
    Window window;
    double first_value = 0.0;
    double last_value = 0.0;
    double max_abs = 0.0;
    double final_envelope = 0.0;
    /// Log-log slope of the running-max envelope of |x_n| over the first
    /// and second half of the window.
    double decay_slope_first = 0.0;
    double decay_slope_second = 0.0;
    /// Same slopes for the envelope of |x_{n+1} - x_n|.
    double diff_slope_first = 0.0;
    double diff_slope_second = 0.0;
    /// Log-log slope of the left running max of |x_n| (growth test).
    double growth_slope_first = 0.0;
    double growth_slope_second = 0.0;
    std::size_t sign_changes = 0;
};

struct ClassificationVerdict {
    VerdictKind kind = VerdictKind::Inconclusive;
    /// APPRECIABLE only: estimate of the standard part and its error bar.
    double standard_part = 0.0;
    double error_bar = 0.0;
    /// FILTER_AMBIGUOUS only: representative value of each cluster, ascending.
    std::vector<double> clusters;
    Evidence evidence;
    std::string note;
};

/// Minimum number of indices in a classification window (last - first >= 8).
inline constexpr std::uint64_t kMinWindowSpan = 8;

/// Classify already-sampled values x_first .. x_last.
/// Throws ParameterError when the window is too small or sizes disagree.
ClassificationVerdict classify_values(const std::vector<double>& values, Window window, double eps);

/// Sample `seq` on the window (in parallel) and classify it.
/// Throws ParameterError when window.last - window.first < 8 or window.first < n_min.
ClassificationVerdict classify(const HyperrealSequence& seq, Window window = kDefaultWindow,
                               double eps = kDefaultEps);

}  // namespace tfline
