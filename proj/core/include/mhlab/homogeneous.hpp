#pragma once

#include <map>
#include <span>
#include <vector>

#include "mhlab/expsum.hpp"
#include "mhlab/multiindex.hpp"
#include "mhlab/ratfunc.hpp"

namespace mhlab {

struct PolyCurve;
struct ExpPolyCurve;
class Curve;

// Homogeneous polynomial in x_0..x_n with moving (rational function of z)
// coefficients, stored sparsely: absent indices mean zero.  Targets always
// have degree >= 1; degree 0 is admitted so certificate blocks can hold
// scalar entries.
class MovingHomPoly {
public:
  MovingHomPoly() : n_(1), d_(1) {}
  MovingHomPoly(int n, int d);

  static MovingHomPoly monomial(int n, const MultiIndex& I, RatFunc c);
  // sum_k coeffs[k] * x_k
  static MovingHomPoly linear_form(std::span<const RatFunc> coeffs);
  static MovingHomPoly linear_form(std::span<const GaussQ> coeffs);

  int nvars() const { return n_; }   // projective dimension n
  int degree() const { return d_; }
  bool is_zero() const { return coeffs_.empty(); }
  const RatFunc& coeff(const MultiIndex& I) const; // zero when absent
  void set_coeff(const MultiIndex& I, RatFunc c);  // validates weight
  const std::map<MultiIndex, RatFunc, GradedLexOrder>& coeffs() const {
    return coeffs_;
  }

  friend MovingHomPoly operator+(const MovingHomPoly& a, const MovingHomPoly& b);
  friend MovingHomPoly operator*(const MovingHomPoly& a, const MovingHomPoly& b);
  friend MovingHomPoly operator*(const RatFunc& s, const MovingHomPoly& a);
  MovingHomPoly pow(unsigned e) const;
  friend bool operator==(const MovingHomPoly& a, const MovingHomPoly& b);

  // Largest z-degree appearing in coefficient numerators/denominators.
  int coefficient_degree() const;

private:
  int n_;
  int d_;
  std::map<MultiIndex, RatFunc, GradedLexOrder> coeffs_;
};

// The same polynomial with coefficients evaluated at a point.
class FrozenHomPoly {
public:
  FrozenHomPoly(int n, int d) : n_(n), d_(d) {}
  int nvars() const { return n_; }
  int degree() const { return d_; }
  void set_coeff(const MultiIndex& I, CBall v);
  CBall eval(std::span<const CBall> x, prec_t prec) const;
  const std::map<MultiIndex, CBall, GradedLexOrder>& coeffs() const {
    return coeffs_;
  }

private:
  int n_;
  int d_;
  std::map<MultiIndex, CBall, GradedLexOrder> coeffs_;
};

// Coefficientwise evaluation at z0; throws CoefficientPole when some
// coefficient has a pole there.
FrozenHomPoly freeze(const MovingHomPoly& Q, const GaussQ& z0, prec_t prec);
FrozenHomPoly freeze(const MovingHomPoly& Q, const CBall& z0, prec_t prec);

// Q(f_0, ..., f_n).  Exact rational function (wrapped) for polynomial
// curves; exponential-polynomial model otherwise.
MeroFunction compose_with_curve(const MovingHomPoly& Q, const Curve& f);
RatFunc compose_exact(const MovingHomPoly& Q, const PolyCurve& f);

// (Q_j)^(d / d_j) with d = lcm of the degrees; zero sets of frozen
// polynomials are preserved.
std::vector<MovingHomPoly> raise_to_common_degree(std::span<const MovingHomPoly> Qs);

std::string to_string(const MovingHomPoly& Q);

} // namespace mhlab
