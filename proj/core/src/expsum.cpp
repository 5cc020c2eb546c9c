#include "mhlab/expsum.hpp"

#include <algorithm>

#include "mhlab/error.hpp"

namespace mhlab {

ExpPolySum::ExpPolySum(Poly p) {
  if (!p.is_zero()) terms_.push_back({GaussQ(), std::move(p)});
}

ExpPolySum ExpPolySum::exponential(const GaussQ& mu, Poly coeff) {
  ExpPolySum out;
  if (!coeff.is_zero()) out.terms_.push_back({mu, std::move(coeff)});
  return out;
}

void ExpPolySum::add_term(const GaussQ& mu, Poly coeff) {
  if (coeff.is_zero()) return;
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), mu,
      [](const Term& t, const GaussQ& m) { return compare(t.mu, m) < 0; });
  if (it != terms_.end() && it->mu == mu) {
    it->coeff += coeff;
    if (it->coeff.is_zero()) terms_.erase(it);
  } else {
    terms_.insert(it, {mu, std::move(coeff)});
  }
}

bool ExpPolySum::is_polynomial() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mu.is_zero());
}

const Poly& ExpPolySum::polynomial_part() const {
  static const Poly kZero;
  for (const auto& t : terms_)
    if (t.mu.is_zero()) return t.coeff;
  return kZero;
}

Poly ExpPolySum::as_polynomial() const {
  if (!is_polynomial())
    throw Error(ErrorKind::Internal, "as_polynomial on a transcendental sum");
  return terms_.empty() ? Poly() : terms_[0].coeff;
}

int ExpPolySum::max_poly_degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, t.coeff.degree());
  return d;
}

bool ExpPolySum::has_nonzero_exponent() const {
  for (const auto& t : terms_)
    if (!t.mu.is_zero()) return true;
  return false;
}

ExpPolySum ExpPolySum::operator-() const {
  ExpPolySum out = *this;
  for (auto& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

ExpPolySum operator+(const ExpPolySum& a, const ExpPolySum& b) {
  ExpPolySum out = a;
  for (const auto& t : b.terms_) out.add_term(t.mu, t.coeff);
  return out;
}

ExpPolySum operator-(const ExpPolySum& a, const ExpPolySum& b) {
  ExpPolySum out = a;
  for (const auto& t : b.terms_) out.add_term(t.mu, -t.coeff);
  return out;
}

ExpPolySum operator*(const ExpPolySum& a, const ExpPolySum& b) {
  ExpPolySum out;
  for (const auto& ta : a.terms_)
    for (const auto& tb : b.terms_)
      out.add_term(ta.mu + tb.mu, ta.coeff * tb.coeff);
  return out;
}

ExpPolySum operator*(const Poly& p, const ExpPolySum& a) {
  ExpPolySum out;
  for (const auto& t : a.terms_) out.add_term(t.mu, p * t.coeff);
  return out;
}

bool operator==(const ExpPolySum& a, const ExpPolySum& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (size_t k = 0; k < a.terms_.size(); ++k)
    if (!(a.terms_[k].mu == b.terms_[k].mu && a.terms_[k].coeff == b.terms_[k].coeff))
      return false;
  return true;
}

ExpPolySum ExpPolySum::derivative() const {
  ExpPolySum out;
  for (const auto& t : terms_)
    out.add_term(t.mu, t.coeff.derivative() + Poly(t.mu) * t.coeff);
  return out;
}

ExpPolySum ExpPolySum::pow(unsigned e) const {
  ExpPolySum out{Poly::one()};
  ExpPolySum base = *this;
  while (e > 0) {
    if (e & 1) out *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return out;
}

CBall ExpPolySum::eval(const CBall& z, prec_t prec) const {
  CBall acc = CBall::exact_long(0, 0, prec);
  for (const auto& t : terms_) {
    CBall v = t.coeff.eval(z, prec);
    if (!t.mu.is_zero())
      v = v * exp_ball(CBall::from_gauss(t.mu, prec) * z);
    acc = acc + v;
  }
  return acc;
}

DBall ExpPolySum::eval_disk(const DBall& z, prec_t prec) const {
  DBall acc(prec);
  for (const auto& t : terms_) {
    DBall v = t.coeff.eval_disk(z, prec);
    if (!t.mu.is_zero())
      v = v * exp_ball(DBall::from_gauss(t.mu, prec) * z);
    acc = acc + v;
  }
  return acc;
}

GaussQ ExpPolySum::derivative_at_zero(int k) const {
  ExpPolySum d = *this;
  for (int i = 0; i < k; ++i) d = d.derivative();
  GaussQ out;
  for (const auto& t : d.terms_) out += t.coeff.eval(GaussQ()); // exp(0) = 1
  return out;
}

std::string to_string(const ExpPolySum& s) {
  if (s.is_zero()) return "0";
  std::string out;
  for (const auto& t : s.terms()) {
    std::string piece;
    if (t.mu.is_zero()) {
      piece = to_string(t.coeff);
    } else {
      std::string mu_str = to_string(Poly(t.mu) * Poly::var());
      if (t.coeff.is_one())
        piece = "exp(" + mu_str + ")";
      else
        piece = "(" + to_string(t.coeff) + ")*exp(" + mu_str + ")";
    }
    if (out.empty())
      out = piece;
    else
      out += " + " + piece;
  }
  return out;
}

MeroFunction::MeroFunction(ExpPolySum num, Poly den) {
  if (den.is_zero())
    throw Error(ErrorKind::InvalidInput, "meromorphic model with zero denominator");
  if (num.is_polynomial()) {
    RatFunc f(num.as_polynomial(), den);
    num_ = ExpPolySum(f.num());
    den_ = f.den();
    return;
  }
  GaussQ lead_inv = inverse(den.lead());
  ExpPolySum scaled;
  for (const auto& t : num.terms())
    scaled += ExpPolySum::exponential(t.mu, lead_inv * t.coeff);
  num_ = std::move(scaled);
  den_ = lead_inv * den;
}

RatFunc MeroFunction::as_ratfunc() const {
  if (!is_exact())
    throw Error(ErrorKind::Internal, "as_ratfunc on a transcendental model");
  return RatFunc(num_.as_polynomial(), den_);
}

MeroFunction operator-(const MeroFunction& a, const MeroFunction& b) {
  return MeroFunction(b.den() * a.num() - a.den() * b.num(), a.den() * b.den());
}

MeroFunction operator*(const MeroFunction& a, const MeroFunction& b) {
  return MeroFunction(a.num() * b.num(), a.den() * b.den());
}

MeroFunction MeroFunction::derivative() const {
  if (den_.is_one()) return MeroFunction(num_.derivative(), Poly::one());
  return MeroFunction(den_ * num_.derivative() - den_.derivative() * num_,
                      den_ * den_);
}

CBall MeroFunction::eval(const CBall& z, prec_t prec) const {
  CBall d = den_.eval(z, prec);
  if (modulus_sq(d).contains_zero())
    throw Error(ErrorKind::PoleAtEvaluationPoint,
                "denominator not distinguishable from zero at this precision");
  return num_.eval(z, prec) / d;
}

std::vector<CBall> MeroFunction::jet(const CBall& z0, int p, prec_t prec) const {
  std::vector<CBall> out;
  out.reserve(p);
  MeroFunction d = *this;
  for (int k = 0; k < p; ++k) {
    out.push_back(d.eval(z0, prec));
    if (k + 1 < p) d = d.derivative();
  }
  return out;
}

std::vector<GaussQ> MeroFunction::jet_exact(const GaussQ& z0, int p) const {
  if (!is_exact() && !z0.is_zero())
    throw Error(ErrorKind::Internal,
                "exact jets of a transcendental model only exist at z = 0");
  std::vector<GaussQ> out;
  out.reserve(p);
  if (is_exact()) {
    RatFunc f = as_ratfunc();
    for (int k = 0; k < p; ++k) {
      out.push_back(f.eval_exact(z0));
      if (k + 1 < p) f = f.derivative();
    }
    return out;
  }
  MeroFunction d = *this;
  for (int k = 0; k < p; ++k) {
    GaussQ dv = d.den().eval(z0);
    if (dv.is_zero())
      throw Error(ErrorKind::PoleAtEvaluationPoint, "jet at a coefficient pole");
    out.push_back(d.num().derivative_at_zero(0) / dv);
    if (k + 1 < p) d = d.derivative();
  }
  return out;
}

std::pair<int, GaussQ> MeroFunction::vanishing_order_at_zero(int cap) const {
  if (is_zero())
    throw Error(ErrorKind::InvalidInput, "vanishing order of the zero function");
  if (den_.eval(GaussQ()).is_zero())
    throw Error(ErrorKind::PoleAtEvaluationPoint,
                "model has a denominator zero at the base point 0");
  GaussQ den0 = den_.eval(GaussQ());
  Rat factorial(1);
  for (int k = 0; k <= cap; ++k) {
    if (k > 0) factorial *= k;
    GaussQ dk = num_.derivative_at_zero(k);
    if (!dk.is_zero()) {
      // leading Taylor coefficient of num/den at 0 is num^(k)(0)/k!/den(0)
      return {k, dk / GaussQ(factorial) / den0};
    }
  }
  throw Error(ErrorKind::Internal, "vanishing order exceeded the search cap");
}

std::string to_string(const MeroFunction& f) {
  if (f.is_exact()) return to_string(f.as_ratfunc());
  if (f.is_entire()) return to_string(f.num());
  return "(" + to_string(f.num()) + ")/(" + to_string(f.den()) + ")";
}

} // namespace mhlab
