#include "mhlab/homogeneous.hpp"

#include <numeric>

#include "mhlab/curve.hpp"
#include "mhlab/error.hpp"

namespace mhlab {

MovingHomPoly::MovingHomPoly(int n, int d) : n_(n), d_(d) {
  if (n < 1 || d < 0)
    throw Error(ErrorKind::InvalidInput, "homogeneous polynomial needs n >= 1, d >= 0");
}

MovingHomPoly MovingHomPoly::monomial(int n, const MultiIndex& I, RatFunc c) {
  MovingHomPoly out(n, I.weight());
  out.set_coeff(I, std::move(c));
  return out;
}

MovingHomPoly MovingHomPoly::linear_form(std::span<const RatFunc> coeffs) {
  int n = static_cast<int>(coeffs.size()) - 1;
  MovingHomPoly out(n, 1);
  for (int k = 0; k <= n; ++k)
    if (!coeffs[k].is_zero())
      out.set_coeff(MultiIndex::unit(n + 1, k), coeffs[k]);
  return out;
}

MovingHomPoly MovingHomPoly::linear_form(std::span<const GaussQ> coeffs) {
  std::vector<RatFunc> rf;
  rf.reserve(coeffs.size());
  for (const auto& c : coeffs) rf.emplace_back(c);
  return linear_form(std::span<const RatFunc>(rf));
}

const RatFunc& MovingHomPoly::coeff(const MultiIndex& I) const {
  static const RatFunc kZero;
  auto it = coeffs_.find(I);
  return it == coeffs_.end() ? kZero : it->second;
}

void MovingHomPoly::set_coeff(const MultiIndex& I, RatFunc c) {
  if (I.size() != n_ + 1 || I.weight() != d_)
    throw Error(ErrorKind::InvalidInput,
                "coefficient index " + to_string(I) + " does not have weight " +
                    std::to_string(d_));
  if (c.is_zero())
    coeffs_.erase(I);
  else
    coeffs_[I] = std::move(c);
}

MovingHomPoly operator+(const MovingHomPoly& a, const MovingHomPoly& b) {
  if (a.n_ != b.n_ || a.d_ != b.d_)
    throw Error(ErrorKind::InvalidInput, "adding forms of different shape");
  MovingHomPoly out = a;
  for (const auto& [I, c] : b.coeffs_) out.set_coeff(I, out.coeff(I) + c);
  return out;
}

MovingHomPoly operator*(const MovingHomPoly& a, const MovingHomPoly& b) {
  if (a.n_ != b.n_)
    throw Error(ErrorKind::InvalidInput, "multiplying forms in different variables");
  MovingHomPoly out(a.n_, a.d_ + b.d_);
  for (const auto& [I, c] : a.coeffs_)
    for (const auto& [J, e] : b.coeffs_) {
      MultiIndex K = add(I, J);
      out.set_coeff(K, out.coeff(K) + c * e);
    }
  return out;
}

MovingHomPoly operator*(const RatFunc& s, const MovingHomPoly& a) {
  MovingHomPoly out(a.nvars(), a.degree());
  if (s.is_zero()) return out;
  for (const auto& [I, c] : a.coeffs()) out.set_coeff(I, s * c);
  return out;
}

MovingHomPoly MovingHomPoly::pow(unsigned e) const {
  MovingHomPoly out(n_, 0);
  out.set_coeff(MultiIndex(std::vector<int>(n_ + 1, 0)), RatFunc(1L));
  MovingHomPoly base = *this;
  while (e > 0) {
    if (e & 1) out = out * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return out;
}

bool operator==(const MovingHomPoly& a, const MovingHomPoly& b) {
  return a.n_ == b.n_ && a.d_ == b.d_ && a.coeffs_ == b.coeffs_;
}

int MovingHomPoly::coefficient_degree() const {
  int d = 0;
  for (const auto& [I, c] : coeffs_) {
    d = std::max(d, c.num().degree());
    d = std::max(d, c.den().degree());
  }
  return d;
}

void FrozenHomPoly::set_coeff(const MultiIndex& I, CBall v) {
  if (I.size() != n_ + 1 || I.weight() != d_)
    throw Error(ErrorKind::InvalidInput, "frozen coefficient index weight mismatch");
  coeffs_.insert_or_assign(I, std::move(v));
}

CBall FrozenHomPoly::eval(std::span<const CBall> x, prec_t prec) const {
  CBall acc = CBall::exact_long(0, 0, prec);
  for (const auto& [I, c] : coeffs_) {
    CBall term = c;
    for (int k = 0; k <= n_; ++k)
      if (I[k] > 0)
        term = term * pow_ui_ball(x[k], static_cast<unsigned long>(I[k]));
    acc = acc + term;
  }
  return acc;
}

FrozenHomPoly freeze(const MovingHomPoly& Q, const GaussQ& z0, prec_t prec) {
  FrozenHomPoly out(Q.nvars(), Q.degree());
  for (const auto& [I, c] : Q.coeffs()) {
    if (c.den().eval(z0).is_zero())
      throw Error(ErrorKind::CoefficientPole,
                  "coefficient at " + to_string(I) + " has a pole at the freeze point");
    out.set_coeff(I, eval_certified(c, z0, prec));
  }
  return out;
}

FrozenHomPoly freeze(const MovingHomPoly& Q, const CBall& z0, prec_t prec) {
  FrozenHomPoly out(Q.nvars(), Q.degree());
  for (const auto& [I, c] : Q.coeffs()) out.set_coeff(I, c.eval(z0, prec));
  return out;
}

RatFunc compose_exact(const MovingHomPoly& Q, const PolyCurve& f) {
  if (Q.nvars() != f.n)
    throw Error(ErrorKind::InvalidInput, "form and curve dimensions differ");
  RatFunc acc;
  for (const auto& [I, c] : Q.coeffs()) {
    Poly mono = Poly::one();
    for (int k = 0; k <= f.n; ++k)
      if (I[k] > 0) mono *= f.comps[k].pow(static_cast<unsigned>(I[k]));
    acc += c * RatFunc(mono);
  }
  return acc;
}

MeroFunction compose_with_curve(const MovingHomPoly& Q, const Curve& f) {
  if (Q.nvars() != f.dim())
    throw Error(ErrorKind::InvalidInput, "form and curve dimensions differ");
  if (f.is_exact()) return MeroFunction(compose_exact(Q, f.poly()));
  // Common denominator of all coefficients, then one entire numerator.
  Poly den = Poly::one();
  for (const auto& [I, c] : Q.coeffs()) {
    Poly g = poly_gcd(den, c.den());
    den *= exact_div(c.den(), g);
  }
  ExpPolySum num;
  for (const auto& [I, c] : Q.coeffs()) {
    ExpPolySum mono{Poly::one()};
    for (int k = 0; k <= f.dim(); ++k)
      if (I[k] > 0) mono *= f.component_sum(k).pow(static_cast<unsigned>(I[k]));
    Poly scale = c.num() * exact_div(den, c.den());
    num += scale * mono;
  }
  return MeroFunction(std::move(num), std::move(den));
}

std::vector<MovingHomPoly> raise_to_common_degree(std::span<const MovingHomPoly> Qs) {
  if (Qs.empty())
    throw Error(ErrorKind::InvalidInput, "degree equalization of an empty family");
  long d = 1;
  for (const auto& Q : Qs) {
    if (Q.degree() < 1)
      throw Error(ErrorKind::InvalidInput, "degree equalization needs degrees >= 1");
    d = std::lcm(d, static_cast<long>(Q.degree()));
  }
  std::vector<MovingHomPoly> out;
  out.reserve(Qs.size());
  for (const auto& Q : Qs)
    out.push_back(Q.pow(static_cast<unsigned>(d / Q.degree())));
  return out;
}

std::string to_string(const MovingHomPoly& Q) {
  if (Q.is_zero()) return "0";
  std::string out;
  for (const auto& [I, c] : Q.coeffs()) {
    std::string mono;
    for (int k = 0; k <= Q.nvars(); ++k) {
      if (I[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(k);
      if (I[k] > 1) mono += "^" + std::to_string(I[k]);
    }
    std::string piece;
    if (mono.empty())
      piece = to_string(c);
    else if (c == RatFunc(1L))
      piece = mono;
    else
      piece = "(" + to_string(c) + ")*" + mono;
    if (out.empty())
      out = piece;
    else
      out += " + " + piece;
  }
  return out;
}

} // namespace mhlab
