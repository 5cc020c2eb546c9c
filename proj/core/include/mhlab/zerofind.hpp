#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "mhlab/ball.hpp"
#include "mhlab/expsum.hpp"
#include "mhlab/poly.hpp"

namespace mhlab {

// Disk-ball evaluator; evaluating at a ball covering a region must enclose
// the function's range over that region.
using BallFn = std::function<DBall(const DBall&, prec_t)>;

// Evaluation interface for the argument-principle machinery.  `range` is a
// dedicated region enclosure; the Taylor-model construction below keeps it
// tight where plain interval evaluation of expanded representations dilutes
// catastrophically (large cancelling coefficients, exp-sum cancellations).
struct AnalyticFn {
  BallFn value;
  BallFn derivative;                                // optional (Newton)
  std::function<DBall(const DBall&, prec_t)> range; // optional

  DBall enclose(const DBall& region, prec_t prec) const {
    return range ? range(region, prec) : value(region, prec);
  }
};

// Taylor-model analytic interfaces: order-J jet at the region center plus a
// remainder bound rho^(J+1)/(J+1)! sup |f^(J+1)| over the region.
AnalyticFn analytic_of(const Poly& p, int taylor_order = 6);
AnalyticFn analytic_of(const ExpPolySum& s, int taylor_order = 6);

struct LocatedZero {
  CBall point;
  int multiplicity = 1;
};

struct ZeroFindOptions {
  prec_t prec = kDefaultPrec;
  double resolve_radius = 1e-10; // refinement target for isolated zeros
  double cluster_floor = 1e-6;   // winding > 1 below this size becomes a cluster
  int contour_budget = 24000;    // adaptive segments per contour
};

// Winding number of f along the boundary of an axis-aligned rectangle /
// circle, certified by zero-excluding arc enclosures.  nullopt when the
// contour cannot be certified (zero on or near the contour, budget
// exhausted).
struct Rect {
  double x0, x1, y0, y1;
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double diam() const;
};
std::optional<int> winding_rect(const AnalyticFn& f, const Rect& r, prec_t prec,
                                int budget);
std::optional<int> winding_circle(const AnalyticFn& f, double cx, double cy,
                                  double radius, prec_t prec, int budget);

// Zeros of f in the closed disk |z| <= R_max by recursive subdivision;
// multiplicities are terminal winding numbers.  Throws ZeroResolutionFailure
// when a contour cannot be certified down to the resolution floor.
std::vector<LocatedZero> locate_zeros_disk(const AnalyticFn& f, double R_max,
                                           const ZeroFindOptions& opts);

// Exact-multiplicity root isolation for polynomials: Yun layers are isolated
// separately, so every located root is simple within its layer.
// R_max = nullopt isolates all roots.
std::vector<LocatedZero> isolate_poly_roots(const Poly& p,
                                            std::optional<double> R_max,
                                            const ZeroFindOptions& opts);

} // namespace mhlab
