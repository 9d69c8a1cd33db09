#include "tfline/kernels.hpp"

#include "tfline/errors.hpp"

#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tfline::kernels {

namespace {

void check_range(std::uint64_t first, std::uint64_t last) {
    if (last < first) {
        throw ParameterError("sample range is empty");
    }
}

// Runs body(i) for i in [0, count) across threads. The first exception thrown
// by any iteration is rethrown on the calling thread once the loop finishes.
template <typename Body>
void parallel_for(std::int64_t count, Body&& body) {
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < count; ++i) {
        try {
            body(i);
        } catch (...) {
#pragma omp critical(tfline_kernel_failure)
            {
                if (!failure) failure = std::current_exception();
            }
        }
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

namespace serial {

std::vector<double> sample(const HyperrealSequence::Generator& gen, std::uint64_t first,
                           std::uint64_t last) {
    check_range(first, last);
    std::vector<double> out(last - first + 1);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = gen(first + i);
    }
    return out;
}

std::vector<double> voltage_grid(const BounceModel& model, double x, std::span<const double> times,
                                 const SourceSpec& source) {
    std::vector<double> out(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        out[i] = model.voltage(x, times[i], source);
    }
    return out;
}

}  // namespace serial

namespace parallel {

std::vector<double> sample(const HyperrealSequence::Generator& gen, std::uint64_t first,
                           std::uint64_t last) {
    check_range(first, last);
    std::vector<double> out(last - first + 1);
    parallel_for(static_cast<std::int64_t>(out.size()), [&](std::int64_t i) {
        out[static_cast<std::size_t>(i)] = gen(first + static_cast<std::uint64_t>(i));
    });
    return out;
}

std::vector<double> voltage_grid(const BounceModel& model, double x, std::span<const double> times,
                                 const SourceSpec& source) {
    std::vector<double> out(times.size());
    parallel_for(static_cast<std::int64_t>(times.size()), [&](std::int64_t i) {
        const auto k = static_cast<std::size_t>(i);
        out[k] = model.voltage(x, times[k], source);
    });
    return out;
}

}  // namespace parallel

int max_threads() noexcept {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace tfline::kernels
