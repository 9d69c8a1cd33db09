#pragma once

// Data-parallel evaluation kernels. Each kernel has a serial reference in
// `serial::` and an OpenMP version in `parallel::`; both evaluate every
// point with the same scalar code, so their outputs are bitwise identical.

#include "tfline/finite_solver.hpp"
#include "tfline/hyperreal.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace tfline::kernels {

namespace serial {

/// gen(first) .. gen(last).
std::vector<double> sample(const HyperrealSequence::Generator& gen, std::uint64_t first,
                           std::uint64_t last);

/// v(x, t_i) for every t_i.
std::vector<double> voltage_grid(const BounceModel& model, double x, std::span<const double> times,
                                 const SourceSpec& source);

}  // namespace serial

namespace parallel {

std::vector<double> sample(const HyperrealSequence::Generator& gen, std::uint64_t first,
                           std::uint64_t last);

std::vector<double> voltage_grid(const BounceModel& model, double x, std::span<const double> times,
                                 const SourceSpec& source);

}  // namespace parallel

/// Number of OpenMP threads the parallel kernels will use (1 without OpenMP).
int max_threads() noexcept;

}  // namespace tfline::kernels
