#include "mhlab/quadrature.hpp"

#include <cmath>

namespace mhlab {

namespace {

struct Sample {
  double x, v, e;
};

struct Worker {
  const NoisyFn& f;
  double eval_error = 0.0;

  Sample at(double x) {
    auto [v, e] = f(x);
    eval_error = std::max(eval_error, e);
    return {x, v, e};
  }

  double recurse(const Sample& a, const Sample& b, const Sample& m, double whole,
                 double tol, int depth) {
    Sample lm = at(0.5 * (a.x + m.x));
    Sample rm = at(0.5 * (m.x + b.x));
    double h = b.x - a.x;
    double left = (h / 12) * (a.v + 4 * lm.v + m.v);
    double right = (h / 12) * (m.v + 4 * rm.v + b.v);
    double split = left + right;
    if (depth <= 0) return split;
    if (std::abs(split - whole) <= 15 * tol)
      return split + (split - whole) / 15;
    return recurse(a, m, lm, left, tol / 2, depth - 1) +
           recurse(m, b, rm, right, tol / 2, depth - 1);
  }
};

} // namespace

QuadResult adaptive_simpson(const NoisyFn& f, double a, double b, double abs_tol,
                            int max_depth) {
  Worker w{f};
  // seed with a few panels so periodic structure is not missed
  const int panels = 8;
  double total = 0.0;
  for (int k = 0; k < panels; ++k) {
    double x0 = a + (b - a) * k / panels;
    double x1 = a + (b - a) * (k + 1) / panels;
    Sample sa = w.at(x0), sb = w.at(x1), sm = w.at(0.5 * (x0 + x1));
    double whole = ((x1 - x0) / 6) * (sa.v + 4 * sm.v + sb.v);
    total += w.recurse(sa, sb, sm, whole, abs_tol / panels, max_depth);
  }
  QuadResult out;
  out.value = total;
  out.error = abs_tol + w.eval_error * (b - a);
  return out;
}

} // namespace mhlab
