#include "mhlab/zerofind.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "mhlab/error.hpp"

namespace mhlab {

double Rect::diam() const { return std::hypot(width(), height()); }

namespace {

constexpr double kPi = 3.14159265358979323846;

double principal(double a) {
  while (a > kPi) a -= 2 * kPi;
  while (a <= -kPi) a += 2 * kPi;
  return a;
}

void div_exact_int(DBall& v, const Int& k, prec_t prec) {
  Real d(prec);
  mpfr_set_z(d.get(), k.get_mpz_t(), MPFR_RNDN);
  Real t(prec);
  mpfr_div(t.get(), v.re.get(), d.get(), MPFR_RNDN);
  mpfr_set(v.re.get(), t.get(), MPFR_RNDN);
  mpfr_div(t.get(), v.im.get(), d.get(), MPFR_RNDN);
  mpfr_set(v.im.get(), t.get(), MPFR_RNDN);
  Real r(kRadiusPrec);
  mpfr_div(r.get(), v.rad.get(), d.get(), MPFR_RNDU);
  mpfr_set(v.rad.get(), r.get(), MPFR_RNDU);
  // cover the two center roundings
  Real ulp(kRadiusPrec), mag(kRadiusPrec);
  mpfr_hypot(mag.get(), v.re.get(), v.im.get(), MPFR_RNDU);
  mpfr_set_ui_2exp(ulp.get(), 1, -static_cast<long>(prec) + 3, MPFR_RNDU);
  mpfr_mul(ulp.get(), ulp.get(), mag.get(), MPFR_RNDU);
  inflate(v, ulp);
}

// Taylor-model range enclosure over a disk region: order-J jet evaluated at
// the (point) center plus the remainder rho^(J+1)/(J+1)! sup |f^(J+1)|.
// Point jets stay tight at any precision; the crude region enclosure only
// enters through the remainder, suppressed by the rho power.
DBall taylor_range(const std::vector<BallFn>& jets, const DBall& region,
                   prec_t prec) {
  int J = static_cast<int>(jets.size()) - 2;
  DBall center = DBall::from_doubles(region.real_mid(), region.imag_mid(), prec);
  DBall w(prec); // 0 +/- rho
  mpfr_set(w.rad.get(), region.rad.get(), MPFR_RNDU);
  Int fact = 1;
  std::vector<DBall> terms;
  for (int j = 0; j <= J; ++j) {
    if (j >= 2) fact *= j;
    DBall coeff = jets[j](center, prec);
    if (j >= 2) div_exact_int(coeff, fact, prec);
    terms.push_back(coeff);
  }
  DBall total = terms[J];
  for (int j = J - 1; j >= 0; --j) total = total * w + terms[j];
  // remainder
  DBall highest = jets[J + 1](region, prec);
  Real sup(kRadiusPrec);
  mpfr_hypot(sup.get(), highest.re.get(), highest.im.get(), MPFR_RNDU);
  mpfr_add(sup.get(), sup.get(), highest.rad.get(), MPFR_RNDU);
  Real rho_pow(kRadiusPrec);
  mpfr_set_ui(rho_pow.get(), 1, MPFR_RNDU);
  for (int j = 0; j <= J; ++j)
    mpfr_mul(rho_pow.get(), rho_pow.get(), region.rad.get(), MPFR_RNDU);
  Int f1 = fact * (J + 1);
  Real denom(kRadiusPrec);
  mpfr_set_z(denom.get(), f1.get_mpz_t(), MPFR_RNDD);
  mpfr_div(rho_pow.get(), rho_pow.get(), denom.get(), MPFR_RNDU);
  mpfr_mul(rho_pow.get(), rho_pow.get(), sup.get(), MPFR_RNDU);
  inflate(total, rho_pow);
  return total;
}

template <class Fn>
AnalyticFn make_analytic(std::shared_ptr<std::vector<Fn>> jets, int J) {
  AnalyticFn out;
  out.value = [jets](const DBall& z, prec_t prec) {
    return (*jets)[0].eval_disk(z, prec);
  };
  out.derivative = [jets](const DBall& z, prec_t prec) {
    return (*jets)[1].eval_disk(z, prec);
  };
  out.range = [jets, J](const DBall& region, prec_t prec) {
    std::vector<BallFn> fns;
    fns.reserve(J + 2);
    for (int j = 0; j <= J + 1; ++j)
      fns.push_back([jets, j](const DBall& z, prec_t pr) {
        return (*jets)[j].eval_disk(z, pr);
      });
    return taylor_range(fns, region, prec);
  };
  return out;
}

} // namespace

AnalyticFn analytic_of(const Poly& p, int taylor_order) {
  int J = std::max(1, std::min(taylor_order, std::max(1, p.degree())));
  auto jets = std::make_shared<std::vector<Poly>>();
  jets->push_back(p);
  for (int j = 1; j <= J + 1; ++j) jets->push_back(jets->back().derivative());
  return make_analytic(jets, J);
}

AnalyticFn analytic_of(const ExpPolySum& s, int taylor_order) {
  int J = std::max(1, taylor_order);
  auto jets = std::make_shared<std::vector<ExpPolySum>>();
  jets->push_back(s);
  for (int j = 1; j <= J + 1; ++j) jets->push_back(jets->back().derivative());
  return make_analytic(jets, J);
}

namespace {

struct ContourWalker {
  const AnalyticFn& f;
  prec_t prec;
  int budget;
  double min_len;
  double angle_sum = 0.0;
  bool failed = false;

  void segment(double ax, double ay, double bx, double by) {
    if (failed) return;
    if (--budget < 0) { failed = true; return; }
    double mx = 0.5 * (ax + bx), my = 0.5 * (ay + by);
    double half = 0.5 * std::hypot(bx - ax, by - ay);
    if (half * 2 < min_len) { failed = true; return; }
    DBall encl = f.enclose(
        DBall::from_midrad(mx, my, half * (1 + 1e-12) + 1e-300, prec), prec);
    auto cone = arg_enclosure(encl);
    if (!cone) {
      segment(ax, ay, mx, my);
      segment(mx, my, bx, by);
      return;
    }
    DBall va = f.value(DBall::from_doubles(ax, ay, prec), prec);
    DBall vb = f.value(DBall::from_doubles(bx, by, prec), prec);
    auto ca = arg_enclosure(va), cb = arg_enclosure(vb);
    if (!ca || !cb) { failed = true; return; }
    angle_sum += principal(cb->angle - ca->angle);
  }

  void arc(double cx, double cy, double rho, double t0, double t1) {
    if (failed) return;
    if (--budget < 0) { failed = true; return; }
    if (rho * (t1 - t0) < min_len) { failed = true; return; }
    double tm = 0.5 * (t0 + t1);
    double cover = 2.0 * rho * std::sin((t1 - t0) / 4.0) * (1 + 1e-12) + 1e-300;
    DBall encl = f.enclose(
        DBall::from_midrad(cx + rho * std::cos(tm), cy + rho * std::sin(tm),
                           cover + rho * 2e-16, prec),
        prec);
    auto cone = arg_enclosure(encl);
    if (!cone) {
      arc(cx, cy, rho, t0, tm);
      arc(cx, cy, rho, tm, t1);
      return;
    }
    auto point = [&](double t) {
      return f.value(
          DBall::from_doubles(cx + rho * std::cos(t), cy + rho * std::sin(t), prec),
          prec);
    };
    auto ca = arg_enclosure(point(t0)), cb = arg_enclosure(point(t1));
    if (!ca || !cb) { failed = true; return; }
    angle_sum += principal(cb->angle - ca->angle);
  }
};

std::optional<int> finish(const ContourWalker& w) {
  if (w.failed) return std::nullopt;
  double turns = w.angle_sum / (2 * kPi);
  double k = std::round(turns);
  if (std::abs(turns - k) > 0.2) return std::nullopt;
  return static_cast<int>(k);
}

// Deterministic split offset pairs tried when a zero sits on a cut line;
// both cut coordinates move together so a retry always displaces every cut.
struct SplitOffsets {
  double fx, fy;
};
constexpr SplitOffsets kSplitOffsets[] = {
    {0.5, 0.5},           {27.0 / 53.0, 29.0 / 61.0}, {23.0 / 47.0, 31.0 / 59.0},
    {0.52734375, 0.4755859375}, {29.0 / 61.0, 23.0 / 47.0}, {0.46875, 0.53125}};

} // namespace

std::optional<int> winding_rect(const AnalyticFn& f, const Rect& r, prec_t prec,
                                int budget) {
  ContourWalker w{f, prec, budget, r.diam() * 1e-9};
  w.segment(r.x0, r.y0, r.x1, r.y0);
  w.segment(r.x1, r.y0, r.x1, r.y1);
  w.segment(r.x1, r.y1, r.x0, r.y1);
  w.segment(r.x0, r.y1, r.x0, r.y0);
  return finish(w);
}

std::optional<int> winding_circle(const AnalyticFn& f, double cx, double cy,
                                  double radius, prec_t prec, int budget) {
  ContourWalker w{f, prec, budget, radius * 1e-9};
  const int pieces = 8;
  for (int k = 0; k < pieces; ++k)
    w.arc(cx, cy, radius, 2 * kPi * k / pieces, 2 * kPi * (k + 1) / pieces);
  return finish(w);
}

namespace {

struct Subdivider {
  const AnalyticFn& f;
  const ZeroFindOptions& opts;
  std::vector<LocatedZero> out;

  std::optional<int> winding(const Rect& r) const {
    return winding_rect(f, r, opts.prec, opts.contour_budget);
  }

  // Split into 4 children along jiggled cut lines; children must carry the
  // parent's zeros (counts add up), else try the next offset pair.
  bool split(const Rect& r, int count, int depth) {
    for (const auto& off : kSplitOffsets) {
      double xc = r.x0 + r.width() * off.fx;
      double yc = r.y0 + r.height() * off.fy;
      Rect ch[4] = {{r.x0, xc, r.y0, yc},
                    {xc, r.x1, r.y0, yc},
                    {r.x0, xc, yc, r.y1},
                    {xc, r.x1, yc, r.y1}};
      int sum = 0;
      std::optional<int> wk[4];
      bool ok = true;
      for (int k = 0; k < 4; ++k) {
        wk[k] = winding(ch[k]);
        if (!wk[k]) { ok = false; break; }
        sum += *wk[k];
      }
      if (!ok || sum != count) continue;
      for (int k = 0; k < 4; ++k)
        if (*wk[k] > 0) handle(ch[k], *wk[k], depth + 1);
      return true;
    }
    return false;
  }

  bool newton_polish(const Rect& r, double& px, double& py) const {
    if (!f.derivative) return false;
    double x = 0.5 * (r.x0 + r.x1), y = 0.5 * (r.y0 + r.y1);
    for (int it = 0; it < 60; ++it) {
      DBall z = DBall::from_doubles(x, y, opts.prec);
      CBall fv = f.value(z, opts.prec).to_cball();
      CBall dv = f.derivative(z, opts.prec).to_cball();
      if (modulus_sq(dv).contains_zero()) return false;
      CBall step = fv / dv;
      double sx = step.real_mid(), sy = step.imag_mid();
      x -= sx;
      y -= sy;
      if (!(std::isfinite(x) && std::isfinite(y))) return false;
      if (std::hypot(sx, sy) < opts.resolve_radius * 0.05) {
        px = x;
        py = y;
        return true;
      }
    }
    return false;
  }

  void emit(const Rect& r, int mult) {
    double cx = 0.5 * (r.x0 + r.x1), cy = 0.5 * (r.y0 + r.y1);
    LocatedZero z;
    z.point = CBall::from_midrad(cx, cy, r.diam() * 0.5 * (1 + 1e-12), opts.prec);
    z.multiplicity = mult;
    out.push_back(z);
  }

  void handle(const Rect& r, int count, int depth) {
    if (depth > 220)
      throw Error(ErrorKind::ZeroResolutionFailure, "subdivision depth exhausted");
    if (count == 1) {
      refine_simple(r, depth);
      return;
    }
    if (r.diam() <= opts.cluster_floor) {
      // cannot separate further at the floor: report as a multiple zero
      emit(r, count);
      return;
    }
    if (!split(r, count, depth))
      throw Error(ErrorKind::ZeroResolutionFailure,
                  "could not certify child contours while separating zeros");
  }

  void refine_simple(Rect r, int depth) {
    // optional Newton acceleration once reasonably localized
    if (r.diam() < 1e-2) {
      double px, py;
      if (newton_polish(r, px, py)) {
        double h = opts.resolve_radius;
        Rect tiny{px - h, px + h, py - h, py + h};
        if (tiny.x0 >= r.x0 && tiny.x1 <= r.x1 && tiny.y0 >= r.y0 && tiny.y1 <= r.y1) {
          auto w = winding(tiny);
          if (w && *w == 1) {
            emit(tiny, 1);
            return;
          }
        }
      }
    }
    if (r.diam() <= opts.resolve_radius * 2) {
      emit(r, 1);
      return;
    }
    for (const auto& off : kSplitOffsets) {
      double xc = r.x0 + r.width() * off.fx;
      double yc = r.y0 + r.height() * off.fy;
      Rect ch[4] = {{r.x0, xc, r.y0, yc},
                    {xc, r.x1, r.y0, yc},
                    {r.x0, xc, yc, r.y1},
                    {xc, r.x1, yc, r.y1}};
      for (int k = 0; k < 4; ++k) {
        auto w = winding(ch[k]);
        if (w && *w == 1) {
          refine_simple(ch[k], depth + 1);
          return;
        }
      }
    }
    throw Error(ErrorKind::ZeroResolutionFailure,
                "failed to re-locate an isolated zero during refinement");
  }
};

} // namespace

std::vector<LocatedZero> locate_zeros_disk(const AnalyticFn& f, double R_max,
                                           const ZeroFindOptions& opts) {
  Subdivider sub{f, opts, {}};
  std::optional<int> total;
  Rect box{};
  for (int attempt = 0; attempt < 6 && !total; ++attempt) {
    double R = R_max * (1.0 + 1e-7 * (attempt + 1) * (attempt + 1));
    box = Rect{-R, R, -R, R};
    total = sub.winding(box);
  }
  if (!total)
    throw Error(ErrorKind::ZeroResolutionFailure,
                "could not certify the outer contour (zero near the boundary?)");
  if (*total > 0) sub.handle(box, *total, 0);
  // keep zeros inside the requested disk (midpoint rule at the rim)
  std::vector<LocatedZero> out;
  for (auto& z : sub.out) {
    double m = std::hypot(z.point.real_mid(), z.point.imag_mid());
    if (m <= R_max * (1.0 + 1e-12)) out.push_back(z);
  }
  std::sort(out.begin(), out.end(), [](const LocatedZero& a, const LocatedZero& b) {
    if (a.point.real_mid() != b.point.real_mid())
      return a.point.real_mid() < b.point.real_mid();
    return a.point.imag_mid() < b.point.imag_mid();
  });
  return out;
}

std::vector<LocatedZero> isolate_poly_roots(const Poly& p,
                                            std::optional<double> R_max,
                                            const ZeroFindOptions& opts) {
  if (p.is_zero())
    throw Error(ErrorKind::InvalidInput, "root isolation of the zero polynomial");
  std::vector<LocatedZero> out;
  for (const auto& sf : squarefree_decomposition(p)) {
    double bound = sf.factor.root_bound() * (1 + 1e-9) + 1e-12;
    if (R_max) bound = std::min(bound, *R_max);
    auto zeros = locate_zeros_disk(analytic_of(sf.factor), bound, opts);
    for (auto& z : zeros) {
      if (z.multiplicity != 1)
        throw Error(ErrorKind::ZeroResolutionFailure,
                    "squarefree factor produced a non-simple cluster");
      z.multiplicity = sf.multiplicity;
      out.push_back(z);
    }
  }
  std::sort(out.begin(), out.end(), [](const LocatedZero& a, const LocatedZero& b) {
    if (a.point.real_mid() != b.point.real_mid())
      return a.point.real_mid() < b.point.real_mid();
    return a.point.imag_mid() < b.point.imag_mid();
  });
  return out;
}

} // namespace mhlab
