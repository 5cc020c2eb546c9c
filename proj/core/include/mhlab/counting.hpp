#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mhlab/divisor.hpp"

namespace mhlab {

// Multiplicity cap for truncated counting functions; no cap means L = inf.
struct Truncation {
  std::optional<Int> cap;

  static Truncation infinite() { return {}; }
  static Truncation level(Int L) { return {std::move(L)}; }
  long apply(long multiplicity) const;
  bool is_infinite() const { return !cap.has_value(); }
};

// Sampling radii for growth probes, kept tau-separated from divisor moduli.
struct RadiusGrid {
  std::vector<double> radii; // increasing, all > 1
  double tau = 1e-9;
};

RadiusGrid make_radius_grid(double r_min, double r_max, int count,
                            std::span<const Divisor* const> divisors,
                            double tau = 1e-9);

// Truncated counting function N^(L)(r) in closed form:
//   sum_{|z|<=1} min(m,L) log r + sum_{1<|z|<=r} min(m,L) log(r/|z|).
// Throws AmbiguousRadius when r is within tau of a point modulus.
double counting_function(const Divisor& nu, double r, const Truncation& L,
                         double tau = 1e-9);

} // namespace mhlab
