#include "mhlab/ratfunc.hpp"

#include "mhlab/error.hpp"

namespace mhlab {

RatFunc::RatFunc(Poly num, Poly den) {
  if (den.is_zero())
    throw Error(ErrorKind::InvalidInput, "rational function with zero denominator");
  if (num.is_zero()) {
    num_ = Poly();
    den_ = Poly::one();
    return;
  }
  Poly g = poly_gcd(num, den);
  if (g.degree() >= 1) {
    num = exact_div(num, g);
    den = exact_div(den, g);
  }
  GaussQ lead_inv = inverse(den.lead());
  num_ = lead_inv * num;
  den_ = lead_inv * den;
}

RatFunc RatFunc::operator-() const {
  RatFunc out = *this;
  out.num_ = -out.num_;
  return out;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero())
    throw Error(ErrorKind::InvalidInput, "division by zero rational function");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

RatFunc inverse(const RatFunc& a) {
  if (a.is_zero())
    throw Error(ErrorKind::InvalidInput, "inverse of zero rational function");
  return RatFunc(a.den(), a.num());
}

RatFunc RatFunc::pow(long e) const {
  if (e < 0) return inverse(*this).pow(-e);
  RatFunc out(1L);
  RatFunc base = *this;
  unsigned long k = static_cast<unsigned long>(e);
  while (k > 0) {
    if (k & 1) out *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return out;
}

RatFunc RatFunc::derivative() const {
  return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

GaussQ RatFunc::eval_exact(const GaussQ& z0) const {
  GaussQ d = den_.eval(z0);
  if (d.is_zero())
    throw Error(ErrorKind::PoleAtEvaluationPoint,
                "rational function evaluated at a pole");
  return num_.eval(z0) / d;
}

CBall RatFunc::eval(const CBall& z0, prec_t prec) const {
  CBall d = den_.eval(z0, prec);
  if (modulus_sq(d).contains_zero())
    throw Error(ErrorKind::PoleAtEvaluationPoint,
                "denominator not distinguishable from zero at this precision");
  return num_.eval(z0, prec) / d;
}

RatFunc ratfunc_normalize(Poly num, Poly den) {
  return RatFunc(std::move(num), std::move(den));
}

CBall eval_certified(const RatFunc& phi, const GaussQ& z0, prec_t P) {
  // Exact pole test first: the canonical form makes den zeros the pole set.
  if (phi.den().eval(z0).is_zero())
    throw Error(ErrorKind::PoleAtEvaluationPoint,
                "evaluation point is a pole of the rational function");
  GaussQ v = phi.eval_exact(z0);
  // One ulp at precision P+8 keeps each real component's relative error
  // strictly below 2^(1-P); exactly-zero components carry radius zero.
  prec_t work = std::max<prec_t>(P + 8, 64);
  CBall out(work);
  out.re = sgn(v.re) == 0 ? RBall::exact_long(0, work) : RBall::from_rat(v.re, work);
  out.im = sgn(v.im) == 0 ? RBall::exact_long(0, work) : RBall::from_rat(v.im, work);
  return out;
}

std::string to_string(const RatFunc& f) {
  if (f.is_polynomial()) return to_string(f.num());
  return "(" + to_string(f.num()) + ")/(" + to_string(f.den()) + ")";
}

} // namespace mhlab
