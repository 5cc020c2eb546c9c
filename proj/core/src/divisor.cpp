#include "mhlab/divisor.hpp"
#include <cmath>

#include <algorithm>

#include "mhlab/error.hpp"

namespace mhlab {

long Divisor::total_multiplicity() const {
  long s = 0;
  for (const auto& p : points) s += p.multiplicity;
  return s;
}

namespace {

DivisorPoint make_point(const CBall& loc, int mult) {
  DivisorPoint p;
  p.location = loc;
  p.multiplicity = mult;
  RBall m = modulus(loc);
  p.mod_lo = std::max(0.0, m.lower());
  p.mod_hi = m.upper();
  return p;
}

void sort_points(std::vector<DivisorPoint>& pts) {
  std::sort(pts.begin(), pts.end(), [](const DivisorPoint& a, const DivisorPoint& b) {
    if (a.location.real_mid() != b.location.real_mid())
      return a.location.real_mid() < b.location.real_mid();
    return a.location.imag_mid() < b.location.imag_mid();
  });
}

} // namespace

Divisor zero_divisor(const MeroFunction& h, double R_max, const ZeroFindOptions& opts) {
  if (h.is_zero())
    throw Error(ErrorKind::InvalidInput, "zero divisor of the zero function");
  Divisor out;
  out.source = to_string(h);
  if (h.is_exact()) {
    RatFunc f = h.as_ratfunc();
    if (f.num().degree() < 1) return out; // nonzero constant numerator
    for (const auto& z : isolate_poly_roots(f.num(), std::nullopt, opts))
      out.points.push_back(make_point(z.point, z.multiplicity));
    sort_points(out.points);
    return out;
  }
  out.disk_radius = R_max;
  auto zeros = locate_zeros_disk(analytic_of(h.num()), R_max, opts);
  // Cancel against denominator roots (the transcendental model cannot be
  // reduced symbolically).
  std::vector<LocatedZero> den_roots;
  if (h.den().degree() >= 1)
    den_roots = isolate_poly_roots(h.den(), std::nullopt, opts);
  for (const auto& z : zeros) {
    int mult = z.multiplicity;
    CBall dv = h.den().eval(z.point, opts.prec);
    if (modulus_sq(dv).contains_zero()) {
      for (const auto& dr : den_roots) {
        double dist = std::hypot(dr.point.real_mid() - z.point.real_mid(),
                                 dr.point.imag_mid() - z.point.imag_mid());
        if (dist <= dr.point.total_rad() + z.point.total_rad())
          mult -= dr.multiplicity;
      }
    }
    if (mult > 0) out.points.push_back(make_point(z.point, mult));
  }
  sort_points(out.points);
  return out;
}

std::vector<Poly> gcd_free_basis(const std::vector<Poly>& inputs) {
  std::vector<Poly> basis;
  for (const auto& input : inputs) {
    if (input.is_zero())
      throw Error(ErrorKind::InvalidInput, "gcd-free basis of a zero polynomial");
    Poly work = squarefree_part(input);
    for (size_t k = 0; k < basis.size() && work.degree() >= 1; ++k) {
      Poly g = poly_gcd(work, basis[k]);
      if (g.degree() < 1) continue;
      if (g != basis[k]) {
        Poly rest = exact_div(basis[k], g).monic();
        basis[k] = g;
        if (rest.degree() >= 1) basis.push_back(rest);
      }
      work = exact_div(work, g).monic();
    }
    if (work.degree() >= 1) basis.push_back(work);
  }
  return basis;
}

PointSystem::PointSystem(std::vector<Poly> inputs, const ZeroFindOptions& opts) {
  // Refine a coprime basis against every Yun layer of every input so that
  // orders are constant along each basis factor.
  std::vector<std::vector<SquarefreeFactor>> layers;
  std::vector<Poly> pieces;
  for (const auto& input : inputs) {
    if (input.is_zero())
      throw Error(ErrorKind::InvalidInput, "point system over a zero polynomial");
    layers.push_back(squarefree_decomposition(input));
    for (const auto& sf : layers.back()) pieces.push_back(sf.factor);
  }
  basis_ = gcd_free_basis(pieces);
  orders_.assign(inputs.size(), std::vector<int>(basis_.size(), 0));
  for (size_t i = 0; i < inputs.size(); ++i)
    for (size_t k = 0; k < basis_.size(); ++k)
      for (const auto& sf : layers[i])
        if (divides(basis_[k], sf.factor)) {
          orders_[i][k] = sf.multiplicity;
          break; // layers of one input are pairwise coprime
        }
  for (size_t k = 0; k < basis_.size(); ++k)
    for (const auto& z : isolate_poly_roots(basis_[k], std::nullopt, opts))
      points_.push_back({z.point, static_cast<int>(k)});
  std::sort(points_.begin(), points_.end(), [](const Point& a, const Point& b) {
    if (a.location.real_mid() != b.location.real_mid())
      return a.location.real_mid() < b.location.real_mid();
    return a.location.imag_mid() < b.location.imag_mid();
  });
}

} // namespace mhlab
