#include "mhlab/characteristic.hpp"

#include <algorithm>
#include <cmath>

#include "mhlab/error.hpp"

namespace mhlab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925;

// log max_i |f_i(r e^{i theta})| with an evaluation error bound.
std::pair<double, double> log_max_on_circle(const std::vector<ExpPolySum>& comps,
                                            double r, double theta, prec_t prec) {
  for (int attempt = 0; attempt < 4; ++attempt) {
    prec_t p = prec << attempt;
    CBall z = CBall::from_doubles(r * std::cos(theta), r * std::sin(theta), p);
    RBall best(p);
    bool have = false;
    for (const auto& c : comps) {
      RBall m = modulus_sq(c.eval(z, p));
      if (!have || mpfr_cmp(m.mid.get(), best.mid.get()) > 0) {
        best = m;
        have = true;
      }
    }
    if (!best.is_positive()) continue; // common near-zero: escalate
    RBall lg = log_ball(best);         // log of |f|^2
    return {0.5 * lg.to_double(), 0.5 * lg.rad_double() + 1e-300};
  }
  throw Error(ErrorKind::ZeroResolutionFailure,
              "max component modulus not certified positive on the circle");
}

QuadResult circle_average(const std::vector<ExpPolySum>& comps, double r,
                          prec_t prec, double tol) {
  NoisyFn fn = [&](double theta) { return log_max_on_circle(comps, r, theta, prec); };
  QuadResult q = adaptive_simpson(fn, 0.0, kTwoPi, tol);
  q.value /= kTwoPi;
  q.error /= kTwoPi;
  return q;
}

std::vector<ExpPolySum> component_sums(const Curve& f) {
  std::vector<ExpPolySum> out;
  for (int k = 0; k <= f.dim(); ++k) out.push_back(f.component_sum(k));
  return out;
}

} // namespace

CharacteristicValue characteristic(const Curve& f, double r, prec_t prec,
                                   double quad_tol) {
  if (!(r >= 1.0))
    throw Error(ErrorKind::InvalidInput, "characteristic needs r >= 1");
  std::vector<ExpPolySum> comps = component_sums(f);
  QuadResult at_r = circle_average(comps, r, prec, quad_tol);
  QuadResult at_1 = circle_average(comps, 1.0, prec, quad_tol);
  CharacteristicValue out;
  out.value = at_r.value - at_1.value;
  out.error = at_r.error + at_1.error;
  if (f.is_exact()) {
    int d = 0;
    for (const auto& c : f.poly().comps) d = std::max(d, c.degree());
    out.exact_slope = d;
  }
  return out;
}

CharacteristicValue characteristic_of_scalar(const RatFunc& phi, double r,
                                             prec_t prec, double quad_tol) {
  if (phi.is_constant()) return {0.0, 0.0, 0};
  std::vector<ExpPolySum> comps{ExpPolySum(phi.den()), ExpPolySum(phi.num())};
  QuadResult at_r = circle_average(comps, r, prec, quad_tol);
  QuadResult at_1 = circle_average(comps, 1.0, prec, quad_tol);
  CharacteristicValue out;
  out.value = at_r.value - at_1.value;
  out.error = at_r.error + at_1.error;
  out.exact_slope = std::max(phi.num().degree(), phi.den().degree());
  return out;
}

CharacteristicValue characteristic_of_scalar(const MeroFunction& phi, double r,
                                             prec_t prec, double quad_tol) {
  if (phi.is_exact()) return characteristic_of_scalar(phi.as_ratfunc(), r, prec, quad_tol);
  std::vector<ExpPolySum> comps{ExpPolySum(phi.den()), phi.num()};
  QuadResult at_r = circle_average(comps, r, prec, quad_tol);
  QuadResult at_1 = circle_average(comps, 1.0, prec, quad_tol);
  CharacteristicValue out;
  out.value = at_r.value - at_1.value;
  out.error = at_r.error + at_1.error;
  return out;
}

SmallnessReport smallness_classify(const RatFunc& a, const Curve& f,
                                   const RadiusGrid* trace_grid, prec_t prec) {
  if (f.is_constant_map())
    throw Error(ErrorKind::InvalidInput, "smallness is relative to a nonconstant map");
  SmallnessReport out;
  auto trace = [&]() {
    if (!trace_grid) return;
    for (double r : trace_grid->radii) {
      double ta = characteristic_of_scalar(a, r, prec).value;
      double tf = characteristic(f, r, prec).value;
      out.ratio_trace.push_back({r, ta, tf});
    }
  };
  if (a.is_constant()) {
    out.verdict = Smallness::Small;
    out.rule = "constant coefficient: T_a = 0";
    trace();
    return out;
  }
  bool f_transcendental = false;
  for (int k = 0; k <= f.dim(); ++k)
    if (f.component_sum(k).has_nonzero_exponent()) f_transcendental = true;
  if (f_transcendental) {
    out.verdict = Smallness::Small;
    out.rule = "rational coefficient vs exponential growth: T_a/T_f -> 0";
    trace();
    return out;
  }
  out.verdict = Smallness::NotSmall;
  out.rule = "nonconstant rational coefficient vs polynomial curve: both "
             "characteristics grow like log r with a positive limit ratio";
  if (!trace_grid) {
    // attach evidence on a default grid
    RadiusGrid g;
    g.radii = {4.0, 16.0, 64.0};
    trace_grid = &g;
    trace();
    trace_grid = nullptr;
  } else {
    trace();
  }
  return out;
}

FmtProbeReport fmt_probe(const Curve& f, const MovingHomPoly& Q,
                         const RadiusGrid& grid, prec_t prec) {
  MeroFunction comp = compose_with_curve(Q, f);
  if (comp.is_zero())
    throw Error(ErrorKind::DegenerateInput, "Q(f) vanishes identically");
  double r_max = grid.radii.back();
  ZeroFindOptions zopts;
  zopts.prec = prec;
  Divisor nu = zero_divisor(comp, r_max * 1.001, zopts);
  FmtProbeReport out;
  double worst = 0.0;
  std::vector<FmtProbeRow> rows;
  for (double r : grid.radii) {
    FmtProbeRow row;
    row.r = r;
    row.counting = counting_function(nu, r, Truncation::infinite(), grid.tau);
    row.degree_term = Q.degree() * characteristic(f, r, prec).value;
    double coeff_sum = 0.0;
    for (const auto& [I, c] : Q.coeffs())
      coeff_sum += characteristic_of_scalar(c, r, prec).value;
    row.coeff_term = 1.0 + coeff_sum;
    row.margin = 0.0;
    rows.push_back(row);
    worst = std::max(worst, (row.counting - row.degree_term) / row.coeff_term);
  }
  out.c_fit = std::max(0.0, worst);
  for (auto& row : rows) {
    row.margin = row.degree_term + out.c_fit * row.coeff_term - row.counting;
    out.rows.push_back(row);
  }
  return out;
}

JensenReport jensen_crosscheck(const MeroFunction& h, double r, prec_t prec,
                               double quad_tol) {
  if (h.is_zero())
    throw Error(ErrorKind::InvalidInput, "Jensen crosscheck of the zero function");
  if (!h.is_entire())
    throw Error(ErrorKind::InvalidInput, "Jensen crosscheck needs an entire model");
  JensenReport out;
  std::vector<ExpPolySum> comps{h.num()};
  NoisyFn fn = [&](double theta) {
    // log |h| = (1/2) log |h|^2
    for (int attempt = 0; attempt < 4; ++attempt) {
      prec_t p = prec << attempt;
      CBall z = CBall::from_doubles(r * std::cos(theta), r * std::sin(theta), p);
      RBall m = modulus_sq(h.num().eval(z, p));
      if (!m.is_positive()) continue;
      RBall lg = log_ball(m);
      return std::make_pair(0.5 * lg.to_double(), 0.5 * lg.rad_double());
    }
    throw Error(ErrorKind::ZeroResolutionFailure,
                "|h| not certified positive on the circle (zero on the contour?)");
  };
  QuadResult q = adaptive_simpson(fn, 0.0, kTwoPi, quad_tol);
  out.circle_average = q.value / kTwoPi;

  auto [lambda, lead] = h.vanishing_order_at_zero();
  out.vanishing_order = lambda;
  out.log_leading = 0.5 * std::log(lead.norm().get_d());

  ZeroFindOptions zopts;
  zopts.prec = prec;
  Divisor nu = zero_divisor(h, r, zopts);
  double sum = 0.0;
  int seen_at_zero = 0;
  for (const auto& p : nu.points) {
    if (p.mod_lo <= 1e-12) {
      seen_at_zero += p.multiplicity;
      continue; // the zero at the origin is carried by the lambda term
    }
    if (std::abs(p.mod_hi - r) < 1e-9 || p.mod_lo > r) continue;
    sum += p.multiplicity * std::log(r / (0.5 * (p.mod_lo + p.mod_hi)));
  }
  if (seen_at_zero != lambda)
    throw Error(ErrorKind::ZeroResolutionFailure,
                "located multiplicity at 0 disagrees with the Taylor order");
  out.divisor_side = sum + lambda * std::log(r) + out.log_leading;
  out.discrepancy = std::abs(out.circle_average - out.divisor_side);
  return out;
}

} // namespace mhlab
