#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mhlab/counting.hpp"
#include "mhlab/curve.hpp"
#include "mhlab/quadrature.hpp"

namespace mhlab {

struct CharacteristicValue {
  double value = 0.0;
  double error = 0.0;
  std::optional<int> exact_slope; // max component degree for the exact model
};

// T_f(r): circle average of log max_i |f_i| at radius r minus the average at
// radius 1.
CharacteristicValue characteristic(const Curve& f, double r,
                                   prec_t prec = kDefaultPrec,
                                   double quad_tol = 1e-8);

// T of a scalar seen as the map (den : num) into CP^1.
CharacteristicValue characteristic_of_scalar(const RatFunc& phi, double r,
                                             prec_t prec = kDefaultPrec,
                                             double quad_tol = 1e-8);
CharacteristicValue characteristic_of_scalar(const MeroFunction& phi, double r,
                                             prec_t prec = kDefaultPrec,
                                             double quad_tol = 1e-8);

enum class Smallness { Small, NotSmall, Undetermined };

struct SmallnessReport {
  Smallness verdict = Smallness::Undetermined;
  std::string rule;
  // (r, T_a(r), T_f(r)) samples attached when a trace is requested or the
  // rules cannot decide.
  std::vector<std::array<double, 3>> ratio_trace;
};

SmallnessReport smallness_classify(const RatFunc& a, const Curve& f,
                                   const RadiusGrid* trace_grid = nullptr,
                                   prec_t prec = kDefaultPrec);

struct FmtProbeRow {
  double r;
  double counting;    // N(r, Q), untruncated
  double degree_term; // d * T_f(r)
  double coeff_term;  // 1 + sum_I T_{a_I}(r)
  double margin;      // degree_term + c_fit * coeff_term - counting
};

struct FmtProbeReport {
  double c_fit = 0.0;
  std::vector<FmtProbeRow> rows;
};

// First Main Theorem probe: smallest constant making every sampled margin
// nonnegative, with the per-radius trace.
FmtProbeReport fmt_probe(const Curve& f, const MovingHomPoly& Q,
                         const RadiusGrid& grid, prec_t prec = kDefaultPrec);

struct JensenReport {
  double circle_average = 0.0; // quadrature side
  double divisor_side = 0.0;   // root sum + vanishing-order terms at 0
  double discrepancy = 0.0;
  int vanishing_order = 0;
  double log_leading = 0.0;
};

// Classical Jensen identity as an independent consistency oracle between the
// quadrature and root-counting paths; h must be entire.
JensenReport jensen_crosscheck(const MeroFunction& h, double r,
                               prec_t prec = kDefaultPrec,
                               double quad_tol = 1e-8);

} // namespace mhlab
