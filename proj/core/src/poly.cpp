#include "mhlab/poly.hpp"

#include <algorithm>
#include <cmath>

#include "mhlab/error.hpp"

namespace mhlab {

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::var() {
  Poly p;
  p.c_ = {GaussQ(0L), GaussQ(1L)};
  return p;
}

Poly Poly::from_coeffs(std::vector<GaussQ> coeffs) {
  Poly p;
  p.c_ = std::move(coeffs);
  p.trim();
  return p;
}

Poly Poly::monomial(const GaussQ& c, int k) {
  Poly p;
  if (!c.is_zero()) {
    p.c_.assign(k + 1, GaussQ());
    p.c_[k] = c;
  }
  return p;
}

const GaussQ& Poly::coeff(int k) const {
  static const GaussQ kZero;
  if (k < 0 || k >= static_cast<int>(c_.size())) return kZero;
  return c_[k];
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& c : out.c_) c = -c;
  return out;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  Poly out;
  out.c_.assign(a.c_.size() + b.c_.size() - 1, GaussQ());
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j].is_zero()) continue;
      out.c_[i + j] += a.c_[i] * b.c_[j];
    }
  }
  out.trim();
  return out;
}

Poly operator*(const GaussQ& s, const Poly& p) {
  if (s.is_zero()) return Poly();
  Poly out = p;
  for (auto& c : out.c_) c *= s;
  return out;
}

Poly Poly::pow(unsigned e) const {
  Poly out = Poly::one();
  Poly base = *this;
  while (e > 0) {
    if (e & 1) out *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return out;
}

Poly Poly::derivative() const {
  Poly out;
  if (c_.size() <= 1) return out;
  out.c_.resize(c_.size() - 1);
  for (size_t k = 1; k < c_.size(); ++k)
    out.c_[k - 1] = GaussQ(Rat(static_cast<long>(k))) * c_[k];
  out.trim();
  return out;
}

Poly Poly::monic() const {
  if (is_zero()) return Poly();
  return inverse(lead()) * *this;
}

GaussQ Poly::eval(const GaussQ& z) const {
  GaussQ acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

CBall Poly::eval(const CBall& z, prec_t prec) const {
  CBall acc = CBall::exact_long(0, 0, prec);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it)
    acc = acc * z + CBall::from_gauss(*it, prec);
  return acc;
}

DBall Poly::eval_disk(const DBall& z, prec_t prec) const {
  DBall acc(prec);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it)
    acc = acc * z + DBall::from_gauss(*it, prec);
  return acc;
}

double Poly::root_bound() const {
  if (degree() < 1) return 0.0;
  // Fujiwara: |z| <= 2 max_k |a_{n-k}/a_n|^(1/k), evaluated through log2
  // size estimates so huge exact coefficients cannot overflow.
  auto log2_upper = [](const Rat& r) -> double {
    if (sgn(r) == 0) return -1e18;
    return static_cast<double>(mpz_sizeinbase(r.get_num().get_mpz_t(), 2)) -
           static_cast<double>(mpz_sizeinbase(r.get_den().get_mpz_t(), 2)) + 1.0;
  };
  auto log2_abs_upper = [&](const GaussQ& c) {
    return std::max(log2_upper(c.re), log2_upper(c.im)) + 1.0;
  };
  const GaussQ& an = lead();
  double lead_lower =
      std::max(log2_upper(an.re), log2_upper(an.im)) - 2.0; // lower bound
  int n = degree();
  double best = -1e18;
  for (int k = 1; k <= n; ++k) {
    const GaussQ& c = coeff(n - k);
    if (c.is_zero()) continue;
    best = std::max(best, (log2_abs_upper(c) - lead_lower) / k);
  }
  if (best < -1e17) return 1.0; // only the leading term: all roots at 0
  return 2.0 * std::pow(2.0, best) * (1.0 + 1e-9) + 1.0;
}

PolyDivRem divrem(const Poly& a, const Poly& b) {
  if (b.is_zero())
    throw Error(ErrorKind::InvalidInput, "polynomial division by zero");
  Poly rem = a;
  std::vector<GaussQ> quot;
  int db = b.degree();
  if (rem.degree() >= db) quot.assign(rem.degree() - db + 1, GaussQ());
  GaussQ lead_inv = inverse(b.lead());
  while (!rem.is_zero() && rem.degree() >= db) {
    int k = rem.degree() - db;
    GaussQ q = rem.lead() * lead_inv;
    quot[k] = q;
    rem -= Poly::monomial(q, k) * b;
  }
  return {Poly::from_coeffs(std::move(quot)), std::move(rem)};
}

bool divides(const Poly& d, const Poly& a) {
  if (d.is_zero()) return a.is_zero();
  return divrem(a, d).rem.is_zero();
}

Poly exact_div(const Poly& a, const Poly& d) {
  auto qr = divrem(a, d);
  if (!qr.rem.is_zero())
    throw Error(ErrorKind::Internal, "exact_div: nonzero remainder");
  return qr.quot;
}

Poly poly_gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = divrem(x, y).rem;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

std::vector<SquarefreeFactor> squarefree_decomposition(const Poly& p) {
  std::vector<SquarefreeFactor> out;
  if (p.degree() < 1) return out;
  // Yun's algorithm on the monic part.
  Poly f = p.monic();
  Poly fp = f.derivative();
  Poly a = poly_gcd(f, fp);
  Poly b = exact_div(f, a);
  Poly c = exact_div(fp, a);
  Poly d = c - b.derivative();
  int mult = 1;
  while (b.degree() >= 1) {
    Poly g = poly_gcd(b, d);
    if (g.degree() >= 1) out.push_back({g, mult});
    b = exact_div(b, g);
    c = exact_div(d, g);
    d = c - b.derivative();
    ++mult;
  }
  return out;
}

Poly squarefree_part(const Poly& p) {
  if (p.degree() < 1) return p.is_zero() ? Poly() : Poly::one();
  Poly out = Poly::one();
  for (const auto& sf : squarefree_decomposition(p)) out *= sf.factor;
  return out;
}

int order_along_factor(const Poly& p, const Poly& w) {
  if (w.degree() < 1)
    throw Error(ErrorKind::Internal, "order_along_factor: constant factor");
  if (p.is_zero())
    throw Error(ErrorKind::Internal, "order_along_factor: zero polynomial");
  int ord = 0;
  Poly rest = p;
  while (true) {
    auto qr = divrem(rest, w);
    if (!qr.rem.is_zero()) return ord;
    rest = qr.quot;
    ++ord;
  }
}

Poly lagrange_interpolate(const std::vector<std::pair<GaussQ, GaussQ>>& pts) {
  Poly out;
  for (size_t i = 0; i < pts.size(); ++i) {
    Poly li = Poly::one();
    GaussQ denom(1L);
    for (size_t j = 0; j < pts.size(); ++j) {
      if (j == i) continue;
      li *= Poly::from_coeffs({-pts[j].first, GaussQ(1L)});
      denom *= pts[i].first - pts[j].first;
    }
    out += (pts[i].second / denom) * li;
  }
  return out;
}

std::string to_string(const Poly& p, const char* var) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    const GaussQ& c = p.coeff(k);
    if (c.is_zero()) continue;
    bool negated = false;
    GaussQ cc = c;
    if ((c.is_real() && sgn(c.re) < 0) ||
        (sgn(c.re) == 0 && sgn(c.im) < 0)) {
      negated = true;
      cc = -c;
    }
    if (out.empty()) {
      if (negated) out += "-";
    } else {
      out += negated ? " - " : " + ";
    }
    bool need_parens = !cc.is_real() && sgn(cc.re) != 0;
    bool unit = cc.is_one();
    if (k == 0) {
      out += need_parens ? "(" + to_string(cc) + ")" : to_string(cc);
      continue;
    }
    if (!unit) {
      if (need_parens)
        out += "(" + to_string(cc) + ")*";
      else
        out += to_string(cc);
    }
    out += var;
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

} // namespace mhlab
