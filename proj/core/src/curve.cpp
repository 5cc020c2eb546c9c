#include "mhlab/curve.hpp"

#include <algorithm>
#include <set>

#include "mhlab/error.hpp"
#include "mhlab/linalg.hpp"

namespace mhlab {

int Curve::dim() const {
  if (is_exact()) return poly().n;
  return exppoly().n;
}

MeroFunction Curve::component(int k) const {
  return MeroFunction(component_sum(k), Poly::one());
}

ExpPolySum Curve::component_sum(int k) const {
  if (is_exact()) return ExpPolySum(poly().comps[k]);
  return exppoly().comps[k];
}

bool Curve::is_constant_map() const {
  // constant iff every pairwise Wronskian f_i' f_j - f_i f_j' vanishes
  int n = dim();
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      ExpPolySum a = component_sum(i), b = component_sum(j);
      if (!(a.derivative() * b - a * b.derivative()).is_zero()) return false;
    }
  return true;
}

PolyCurve reduce_representation(std::vector<Poly> components) {
  bool all_zero = true;
  for (const auto& c : components)
    if (!c.is_zero()) all_zero = false;
  if (all_zero)
    throw Error(ErrorKind::InvalidInput, "all curve components are zero");
  Poly g;
  for (const auto& c : components) g = poly_gcd(g, c);
  if (g.degree() >= 1)
    for (auto& c : components) c = exact_div(c, g);
  PolyCurve out;
  out.n = static_cast<int>(components.size()) - 1;
  out.comps = std::move(components);
  Curve probe{out};
  if (probe.is_constant_map())
    throw Error(ErrorKind::InvalidInput, "curve components are pairwise proportional");
  return out;
}

ExpPolyCurve make_exp_curve(std::vector<ExpPolySum> components) {
  bool all_zero = true;
  for (const auto& c : components)
    if (!c.is_zero()) all_zero = false;
  if (all_zero)
    throw Error(ErrorKind::InvalidInput, "all curve components are zero");
  ExpPolyCurve out;
  out.n = static_cast<int>(components.size()) - 1;
  out.comps = std::move(components);
  return out;
}

namespace {

GaussQ mul_int(const GaussQ& v, const Int& k) { return v * GaussQ(Rat(k)); }
CBall mul_int(const CBall& v, const Int& k) {
  return v * CBall::from_gauss(GaussQ(Rat(k)), v.prec());
}

// Jets of a quotient from jets of numerator and denominator via the Leibniz
// recursion a_j = sum_i C(j,i) r_i b_{j-i}.
template <class V>
std::vector<V> divide_jets(const std::vector<V>& a, const std::vector<V>& b) {
  size_t p = a.size();
  std::vector<std::vector<Int>> C(p, std::vector<Int>(p, 0));
  for (size_t j = 0; j < p; ++j) {
    C[j][0] = 1;
    for (size_t i = 1; i <= j; ++i)
      C[j][i] = C[j - 1][i - 1] + (i <= j - 1 ? C[j - 1][i] : Int(0));
  }
  std::vector<V> r;
  r.reserve(p);
  for (size_t j = 0; j < p; ++j) {
    V acc = a[j];
    for (size_t i = 0; i < j; ++i) {
      V scaled = mul_int(r[i] * b[j - i], C[j][i]);
      acc = acc - scaled;
    }
    r.push_back(acc / b[0]);
  }
  return r;
}

} // namespace

Jet jet_of_ratio(const Curve& f, int k, int s, const CBall& z0, int p, prec_t prec) {
  if (p < 1) throw Error(ErrorKind::InvalidInput, "jet order must be >= 1");
  MeroFunction fs = f.component(s);
  CBall fs0 = fs.eval(z0, prec);
  if (modulus_sq(fs0).contains_zero())
    throw Error(ErrorKind::PoleAtEvaluationPoint,
                "denominator component not certified nonzero at the base point");
  std::vector<CBall> a = f.component(k).jet(z0, p, prec);
  std::vector<CBall> b = fs.jet(z0, p, prec);
  Jet out;
  out.base = z0;
  out.order = p;
  out.values = divide_jets(a, b);
  return out;
}

Jet jet_of_ratio_exact(const Curve& f, int k, int s, const GaussQ& z0, int p,
                       prec_t prec) {
  if (!f.is_exact())
    throw Error(ErrorKind::InvalidInput, "exact jets need the polynomial model");
  if (p < 1) throw Error(ErrorKind::InvalidInput, "jet order must be >= 1");
  const PolyCurve& pc = f.poly();
  if (pc.comps[s].eval(z0).is_zero())
    throw Error(ErrorKind::PoleAtEvaluationPoint,
                "denominator component vanishes at the base point");
  auto jets_of = [&](const Poly& q) {
    std::vector<GaussQ> out;
    Poly d = q;
    for (int j = 0; j < p; ++j) {
      out.push_back(d.eval(z0));
      if (j + 1 < p) d = d.derivative();
    }
    return out;
  };
  std::vector<GaussQ> r =
      divide_jets(jets_of(pc.comps[k]), jets_of(pc.comps[s]));
  Jet out;
  out.base = CBall::from_gauss(z0, prec);
  out.order = p;
  out.values.reserve(p);
  for (const auto& v : r) out.values.push_back(CBall::from_gauss(v, prec));
  out.exact = std::move(r);
  return out;
}

std::vector<RatFunc> default_field_generators(std::span<const MovingHomPoly> targets) {
  std::vector<RatFunc> out;
  for (const auto& Q : targets) {
    if (Q.coeffs().empty()) continue;
    const RatFunc& base = Q.coeffs().begin()->second;
    for (const auto& [I, c] : Q.coeffs()) {
      RatFunc quot = c / base;
      if (quot.is_constant()) continue;
      if (std::find(out.begin(), out.end(), quot) == out.end())
        out.push_back(quot);
    }
  }
  return out;
}

namespace {

// Coefficient-space candidates: monomials in the supplied generators of
// total degree <= gen_deg_max whose z-degree stays within deg_z_max, pruned
// to a linearly independent set.  With no generators the space is the
// constants, matching the fixed-target field.
std::vector<RatFunc> coefficient_basis(std::span<const RatFunc> gens, int deg_z_max,
                                       int gen_deg_max) {
  std::vector<RatFunc> gen_monomials{RatFunc(1L)};
  std::vector<RatFunc> frontier{RatFunc(1L)};
  for (int d = 1; d <= gen_deg_max; ++d) {
    std::vector<RatFunc> next;
    for (const auto& f : frontier)
      for (const auto& g : gens) {
        RatFunc prod = f * g;
        if (std::find(gen_monomials.begin(), gen_monomials.end(), prod) ==
            gen_monomials.end()) {
          gen_monomials.push_back(prod);
          next.push_back(prod);
        }
      }
    frontier = std::move(next);
  }
  std::vector<RatFunc> out;
  std::vector<RatFunc> candidates;
  for (const auto& g : gen_monomials)
    if (std::max(g.num().degree(), g.den().degree()) <= deg_z_max)
      candidates.push_back(g);
  // prune to a linearly independent subset (over the Gaussian rationals)
  Poly common_den = Poly::one();
  for (const auto& c : candidates) {
    Poly g = poly_gcd(common_den, c.den());
    common_den *= exact_div(c.den(), g);
  }
  std::vector<Poly> cleared;
  std::vector<size_t> kept;
  for (size_t t = 0; t < candidates.size(); ++t) {
    Poly p = candidates[t].num() * exact_div(common_den, candidates[t].den());
    // dependence test against current span
    int maxdeg = p.degree();
    for (const auto& q : cleared) maxdeg = std::max(maxdeg, q.degree());
    Mat<GaussQ> m(maxdeg + 1, static_cast<int>(cleared.size()) + 1);
    for (size_t c = 0; c < cleared.size(); ++c)
      for (int r = 0; r <= cleared[c].degree(); ++r)
        m.at(r, static_cast<int>(c)) = cleared[c].coeff(r);
    for (int r = 0; r <= p.degree(); ++r)
      m.at(r, static_cast<int>(cleared.size())) = p.coeff(r);
    if (nullspace(m).empty()) {
      cleared.push_back(p);
      kept.push_back(t);
    }
  }
  for (size_t t : kept) out.push_back(candidates[t]);
  return out;
}

} // namespace

NondegeneracyReport nondegeneracy_search(const Curve& f,
                                         std::span<const RatFunc> generators,
                                         int degree_max, int deg_z_max,
                                         int gen_deg_max) {
  if (degree_max < 1)
    throw Error(ErrorKind::InvalidInput, "nondegeneracy search needs degree_max >= 1");
  NondegeneracyReport report;
  report.degree_max = degree_max;
  report.deg_z_max = deg_z_max;
  report.gen_deg_max = gen_deg_max;
  std::vector<RatFunc> basis = coefficient_basis(generators, deg_z_max, gen_deg_max);
  report.searched_space =
      "homogeneous degree <= " + std::to_string(degree_max) + ", coefficients in span of " +
      std::to_string(basis.size()) + " generator monomials (generator degree <= " +
      std::to_string(gen_deg_max) + ", z-degree <= " + std::to_string(deg_z_max) + ")";

  int n = f.dim();
  Poly basis_den = Poly::one();
  for (const auto& b : basis) {
    Poly g = poly_gcd(basis_den, b.den());
    basis_den *= exact_div(b.den(), g);
  }

  for (int D = 1; D <= degree_max; ++D) {
    std::vector<MultiIndex> monos = enumerate_index_set(n, D);
    // Precompute f^I as exponential-polynomial sums (exact for both models).
    std::vector<ExpPolySum> powers;
    powers.reserve(monos.size());
    for (const auto& I : monos) {
      ExpPolySum m{Poly::one()};
      for (int k = 0; k <= n; ++k)
        if (I[k] > 0) m *= f.component_sum(k).pow(static_cast<unsigned>(I[k]));
      powers.push_back(std::move(m));
    }
    // Terms lambda_{I,t} * (basis_t * basis_den) * f^I, expanded over the
    // (mu, z-power) coordinates; columns are the unknowns lambda.
    struct RowKey {
      GaussQ mu;
      int zdeg;
    };
    std::vector<ExpPolySum> cols;
    for (size_t mi = 0; mi < monos.size(); ++mi)
      for (const auto& b : basis) {
        Poly cleared = b.num() * exact_div(basis_den, b.den());
        cols.push_back(cleared * powers[mi]);
      }
    // collect row coordinates
    std::vector<std::pair<GaussQ, int>> rows;
    auto row_of = [&](const GaussQ& mu, int zdeg) {
      for (size_t r = 0; r < rows.size(); ++r)
        if (rows[r].first == mu && rows[r].second == zdeg) return static_cast<int>(r);
      rows.emplace_back(mu, zdeg);
      return static_cast<int>(rows.size()) - 1;
    };
    for (const auto& c : cols)
      for (const auto& t : c.terms())
        for (int k = 0; k <= t.coeff.degree(); ++k)
          if (!t.coeff.coeff(k).is_zero()) row_of(t.mu, k);
    Mat<GaussQ> m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (size_t c = 0; c < cols.size(); ++c)
      for (const auto& t : cols[c].terms())
        for (int k = 0; k <= t.coeff.degree(); ++k)
          if (!t.coeff.coeff(k).is_zero())
            m.at(row_of(t.mu, k), static_cast<int>(c)) = t.coeff.coeff(k);
    auto null_basis = nullspace(m);
    if (!null_basis.empty()) {
      const auto& v = null_basis.front();
      MovingHomPoly rel(n, D);
      for (size_t mi = 0; mi < monos.size(); ++mi) {
        RatFunc coeff;
        for (size_t t = 0; t < basis.size(); ++t) {
          const GaussQ& lambda = v[mi * basis.size() + t];
          if (!lambda.is_zero()) coeff += RatFunc(GaussQ(lambda)) * basis[t];
        }
        if (!coeff.is_zero()) rel.set_coeff(monos[mi], coeff);
      }
      report.relation_found = true;
      report.relation = std::move(rel);
      return report;
    }
  }
  return report;
}

std::string to_string(const Curve& f) {
  std::string out = "(";
  for (int k = 0; k <= f.dim(); ++k) {
    if (k) out += " : ";
    out += to_string(f.component_sum(k));
  }
  out += ")";
  return out;
}

} // namespace mhlab
