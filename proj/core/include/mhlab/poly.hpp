#pragma once

#include <utility>
#include <vector>

#include "mhlab/ball.hpp"
#include "mhlab/gauss.hpp"

namespace mhlab {

// Univariate polynomial in the base variable z over the Gaussian rationals.
// Invariant: leading coefficient nonzero unless the polynomial is zero
// (empty coefficient vector).
class Poly {
public:
  Poly() = default;
  explicit Poly(GaussQ c) { if (!c.is_zero()) c_.push_back(std::move(c)); }
  explicit Poly(long v) : Poly(GaussQ(v)) {}

  static Poly zero() { return Poly(); }
  static Poly one() { return Poly(GaussQ(1L)); }
  static Poly var(); // z
  static Poly from_coeffs(std::vector<GaussQ> coeffs); // coeffs[k] on z^k
  static Poly monomial(const GaussQ& c, int k);

  int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
  const GaussQ& coeff(int k) const;
  GaussQ lead() const { return c_.empty() ? GaussQ() : c_.back(); }
  const std::vector<GaussQ>& coeffs() const { return c_; }

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { a += b; return a; }
  friend Poly operator-(Poly a, const Poly& b) { a -= b; return a; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }
  friend Poly operator*(const GaussQ& s, const Poly& p);
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly pow(unsigned e) const;
  Poly derivative() const;
  Poly monic() const; // zero stays zero
  GaussQ eval(const GaussQ& z) const;
  CBall eval(const CBall& z, prec_t prec) const;
  DBall eval_disk(const DBall& z, prec_t prec) const;

  // Cauchy-style upper bound for the modulus of every root.
  double root_bound() const;

private:
  void trim();
  std::vector<GaussQ> c_;
};

struct PolyDivRem {
  Poly quot;
  Poly rem;
};
PolyDivRem divrem(const Poly& a, const Poly& b); // b != 0
bool divides(const Poly& d, const Poly& a);
Poly exact_div(const Poly& a, const Poly& d); // throws if remainder nonzero

// Monic gcd; gcd(0,0) = 0.
Poly poly_gcd(const Poly& a, const Poly& b);

struct SquarefreeFactor {
  Poly factor;        // monic, squarefree
  int multiplicity;
};
// Yun's algorithm; product of factor^multiplicity recovers monic(p).
std::vector<SquarefreeFactor> squarefree_decomposition(const Poly& p);
Poly squarefree_part(const Poly& p); // monic radical

// Order of vanishing of p along a squarefree monic factor w (the common
// multiplicity of p at every root of an irreducible piece of w only makes
// sense when w divides exactly one Yun layer; callers refine first).
int order_along_factor(const Poly& p, const Poly& w);

// Unique interpolating polynomial of degree < points.size().
Poly lagrange_interpolate(const std::vector<std::pair<GaussQ, GaussQ>>& points);

std::string to_string(const Poly& p, const char* var = "z");

} // namespace mhlab
