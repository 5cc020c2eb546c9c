#pragma once

#include <vector>

#include "mhlab/ratfunc.hpp"

namespace mhlab {

// Entire function of the form sum_k p_k(z) * exp(mu_k z) with polynomial
// parts p_k over the Gaussian rationals and distinct Gaussian-rational
// exponents mu_k.  Closed under +, -, *, d/dz, so compositions of moving
// targets with exponential-polynomial curves stay inside the class, and the
// zero test is exact (empty canonical form).
class ExpPolySum {
public:
  struct Term {
    GaussQ mu;
    Poly coeff; // nonzero
  };

  ExpPolySum() = default;
  explicit ExpPolySum(Poly p); // exponent-zero part only
  static ExpPolySum exponential(const GaussQ& mu, Poly coeff);

  bool is_zero() const { return terms_.empty(); }
  bool is_polynomial() const; // all exponents zero (or no terms)
  const Poly& polynomial_part() const; // term with mu = 0, zero poly if absent
  Poly as_polynomial() const;          // requires is_polynomial()
  const std::vector<Term>& terms() const { return terms_; }
  int term_count() const { return static_cast<int>(terms_.size()); }
  int max_poly_degree() const;
  bool has_nonzero_exponent() const;

  ExpPolySum operator-() const;
  friend ExpPolySum operator+(const ExpPolySum& a, const ExpPolySum& b);
  friend ExpPolySum operator-(const ExpPolySum& a, const ExpPolySum& b);
  friend ExpPolySum operator*(const ExpPolySum& a, const ExpPolySum& b);
  ExpPolySum& operator+=(const ExpPolySum& o) { *this = *this + o; return *this; }
  ExpPolySum& operator-=(const ExpPolySum& o) { *this = *this - o; return *this; }
  ExpPolySum& operator*=(const ExpPolySum& o) { *this = *this * o; return *this; }
  friend ExpPolySum operator*(const Poly& p, const ExpPolySum& a);
  friend bool operator==(const ExpPolySum& a, const ExpPolySum& b);

  ExpPolySum derivative() const;
  ExpPolySum pow(unsigned e) const;
  CBall eval(const CBall& z, prec_t prec) const;
  DBall eval_disk(const DBall& z, prec_t prec) const;
  // Exact k-th derivative value at z = 0 (the only point where exp terms
  // evaluate rationally).
  GaussQ derivative_at_zero(int k) const;

private:
  void add_term(const GaussQ& mu, Poly coeff);
  std::vector<Term> terms_; // sorted by exponent, coeffs nonzero
};

std::string to_string(const ExpPolySum& s);

// Meromorphic function model: entire numerator (exponential-polynomial or
// plain polynomial) over a polynomial denominator.  When the numerator is a
// polynomial the representation is reduced and all queries are exact.
class MeroFunction {
public:
  MeroFunction() : num_(), den_(Poly::one()) {}
  explicit MeroFunction(const RatFunc& f)
      : num_(ExpPolySum(f.num())), den_(f.den()) {}
  MeroFunction(ExpPolySum num, Poly den); // normalizes the exact case

  const ExpPolySum& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_exact() const { return num_.is_polynomial(); }
  bool is_entire() const { return den_.is_constant(); }
  RatFunc as_ratfunc() const; // requires is_exact()

  friend MeroFunction operator-(const MeroFunction& a, const MeroFunction& b);
  friend MeroFunction operator*(const MeroFunction& a, const MeroFunction& b);

  MeroFunction derivative() const;
  CBall eval(const CBall& z, prec_t prec) const;
  DBall eval_disk(const DBall& z, prec_t prec) const;
  // Derivatives of order 0..p-1 at z0 with certified enclosures.
  std::vector<CBall> jet(const CBall& z0, int p, prec_t prec) const;
  // Exact jets: any point for the exact model, z0 = 0 for the rest.
  std::vector<GaussQ> jet_exact(const GaussQ& z0, int p) const;
  // Order of vanishing at z = 0 together with the leading Taylor
  // coefficient there; cap guards against h == 0 slipping through.
  std::pair<int, GaussQ> vanishing_order_at_zero(int cap = 256) const;

private:
  ExpPolySum num_;
  Poly den_;
};

std::string to_string(const MeroFunction& f);

} // namespace mhlab
