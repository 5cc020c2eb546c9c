#pragma once

#include <string>

#include "mhlab/poly.hpp"

namespace mhlab {

// Rational function in z over the Gaussian rationals, kept in the unique
// canonical form: numerator and denominator coprime, denominator monic and
// nonzero.  This is the coefficient field for moving targets.
class RatFunc {
public:
  RatFunc() : num_(), den_(Poly::one()) {}
  explicit RatFunc(Poly num) : num_(std::move(num)), den_(Poly::one()) {}
  explicit RatFunc(const GaussQ& c) : num_(Poly(c)), den_(Poly::one()) {}
  explicit RatFunc(long v) : num_(Poly(v)), den_(Poly::one()) {}
  RatFunc(Poly num, Poly den); // normalizes; throws InvalidInput on den = 0

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& o) { *this = *this + o; return *this; }
  RatFunc& operator-=(const RatFunc& o) { *this = *this - o; return *this; }
  RatFunc& operator*=(const RatFunc& o) { *this = *this * o; return *this; }
  RatFunc& operator/=(const RatFunc& o) { *this = *this / o; return *this; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  RatFunc pow(long e) const; // negative exponents allowed on nonzero input
  RatFunc derivative() const;

  // Exact evaluation; throws PoleAtEvaluationPoint when the denominator
  // vanishes at z0 (canonical form makes that exactly the pole set).
  GaussQ eval_exact(const GaussQ& z0) const;
  // Ball evaluation at an enclosure; throws PoleAtEvaluationPoint when the
  // denominator enclosure cannot be certified away from zero.
  CBall eval(const CBall& z0, prec_t prec) const;

private:
  Poly num_;
  Poly den_;
};

RatFunc inverse(const RatFunc& a);

// Spec-facing constructor: normalized num/den pair.
RatFunc ratfunc_normalize(Poly num, Poly den);

// Certified evaluation at an exact point: escalates the working precision
// until the result's relative error in each real component is <= 2^(1-P).
CBall eval_certified(const RatFunc& phi, const GaussQ& z0, prec_t P);

std::string to_string(const RatFunc& f);

} // namespace mhlab
