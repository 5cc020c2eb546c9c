#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "mhlab/expsum.hpp"
#include "mhlab/homogeneous.hpp"

namespace mhlab {

// Reduced polynomial representation of a map C -> CP^n: components coprime,
// not all zero, and at least two components non-proportional.
struct PolyCurve {
  int n = 0;
  std::vector<Poly> comps;
};

// Entire exponential-polynomial representation; assumed to have no common
// component zeros (not symbolically verified).
struct ExpPolyCurve {
  int n = 0;
  std::vector<ExpPolySum> comps;
};

class Curve {
public:
  Curve(PolyCurve c) : v_(std::move(c)) {}
  Curve(ExpPolyCurve c) : v_(std::move(c)) {}

  int dim() const;
  bool is_exact() const { return std::holds_alternative<PolyCurve>(v_); }
  const PolyCurve& poly() const { return std::get<PolyCurve>(v_); }
  const ExpPolyCurve& exppoly() const { return std::get<ExpPolyCurve>(v_); }
  MeroFunction component(int k) const;
  ExpPolySum component_sum(int k) const;
  bool is_constant_map() const;

private:
  std::variant<PolyCurve, ExpPolyCurve> v_;
};

// Divides out the common polynomial factor; throws on all-zero or constant
// (all components pairwise proportional) input.
PolyCurve reduce_representation(std::vector<Poly> components);
ExpPolyCurve make_exp_curve(std::vector<ExpPolySum> components);

// Derivatives of f_k/f_s of orders 0..p-1 at a base point.
struct Jet {
  CBall base;
  int order = 0;
  std::vector<CBall> values;
  std::optional<std::vector<GaussQ>> exact; // polynomial model at exact z0
};

Jet jet_of_ratio(const Curve& f, int k, int s, const CBall& z0, int p, prec_t prec);
Jet jet_of_ratio_exact(const Curve& f, int k, int s, const GaussQ& z0, int p,
                       prec_t prec);

// Bounded-degree search for a homogeneous relation Q(f_0,...,f_n) == 0 whose
// coefficients are z-polynomial combinations of monomials in the supplied
// field generators.  A miss certifies only "no relation within the bounds".
struct NondegeneracyReport {
  bool relation_found = false;
  std::optional<MovingHomPoly> relation;
  int degree_max = 0;
  int deg_z_max = 0;
  int gen_deg_max = 0;
  std::string searched_space;
};

NondegeneracyReport nondegeneracy_search(const Curve& f,
                                         std::span<const RatFunc> generators,
                                         int degree_max, int deg_z_max,
                                         int gen_deg_max = 2);

// Quotients of each target's coefficients by its first nonzero coefficient;
// generates the same field as all pairwise quotients.
std::vector<RatFunc> default_field_generators(std::span<const MovingHomPoly> targets);

std::string to_string(const Curve& f);

} // namespace mhlab
