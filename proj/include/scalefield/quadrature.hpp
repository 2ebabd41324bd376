#pragma once

#include <cstddef>

#include "scalefield/error.hpp"

namespace scalefield {

/// Composite Simpson rule on [a, b] with `steps` subintervals. An odd step
/// count is rounded up to the next even number.
template <typename F>
double Simpson(F&& f, double a, double b, std::size_t steps) {
  if (steps < 2) Throw(ErrorCode::kInvalidArgument, "Simpson quadrature needs at least 2 steps");
  if (steps % 2 != 0) ++steps;
  const double h = (b - a) / static_cast<double>(steps);
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t k = 1; k < steps; ++k) {
    const double x = a + static_cast<double>(k) * h;
    if (k % 2 == 1) {
      odd += f(x);
    } else {
      even += f(x);
    }
  }
  return h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

}  // namespace scalefield
