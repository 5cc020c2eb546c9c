#pragma once

#include <functional>

namespace mhlab {

struct QuadResult {
  double value = 0.0;
  double error = 0.0; // quadrature estimate plus propagated evaluation error
};

// Integrand returns (value, evaluation error bound).
using NoisyFn = std::function<std::pair<double, double>(double)>;

// Adaptive Simpson with bisection; kinks (e.g. where the achieving index of
// a max switches) are handled by refinement, no special casing.
QuadResult adaptive_simpson(const NoisyFn& f, double a, double b, double abs_tol,
                            int max_depth = 48);

} // namespace mhlab
