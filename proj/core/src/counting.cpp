#include "mhlab/counting.hpp"

#include <algorithm>
#include <cmath>

#include "mhlab/error.hpp"

namespace mhlab {

long Truncation::apply(long multiplicity) const {
  if (!cap) return multiplicity;
  if (*cap >= multiplicity) return multiplicity;
  return cap->get_si();
}

RadiusGrid make_radius_grid(double r_min, double r_max, int count,
                            std::span<const Divisor* const> divisors, double tau) {
  if (!(r_min > 1.0) || !(r_max > r_min) || count < 2)
    throw Error(ErrorKind::InvalidInput, "radius grid needs 1 < r_min < r_max, count >= 2");
  std::vector<double> moduli;
  for (const Divisor* d : divisors)
    for (const auto& p : d->points) moduli.push_back(0.5 * (p.mod_lo + p.mod_hi));
  RadiusGrid grid;
  grid.tau = tau;
  double ratio = std::pow(r_max / r_min, 1.0 / (count - 1));
  for (int k = 0; k < count; ++k) {
    double r = r_min * std::pow(ratio, k);
    // nudge away from any divisor modulus
    for (int tries = 0; tries < 64; ++tries) {
      bool clear = true;
      for (double m : moduli)
        if (std::abs(r - m) <= 2 * tau) { clear = false; break; }
      if (clear) break;
      r += 4 * tau;
    }
    grid.radii.push_back(r);
  }
  return grid;
}

double counting_function(const Divisor& nu, double r, const Truncation& L, double tau) {
  if (!(r > 1.0))
    throw Error(ErrorKind::InvalidInput, "counting function needs r > 1");
  if (r > nu.disk_radius * (1 + 1e-12))
    throw Error(ErrorKind::InvalidInput,
                "radius exceeds the divisor's localization disk");
  double total = 0.0;
  for (const auto& p : nu.points) {
    if (p.mod_lo - tau <= r && r <= p.mod_hi + tau)
      throw Error(ErrorKind::AmbiguousRadius,
                  "radius within tau of a divisor point modulus");
    double m = 0.5 * (p.mod_lo + p.mod_hi);
    if (m > r) continue;
    double c = static_cast<double>(L.apply(p.multiplicity));
    total += c * std::log(r / std::max(m, 1.0));
  }
  return total;
}

} // namespace mhlab
