#include "mhlab/uniqueness.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "mhlab/divisor.hpp"
#include "mhlab/error.hpp"

namespace mhlab {

std::vector<int> TargetSet::degrees() const {
  std::vector<int> out;
  out.reserve(targets.size());
  for (const auto& Q : targets) out.push_back(Q.degree());
  return out;
}

namespace {

Rat make_rat(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

std::vector<MeroFunction> compositions(const Curve& c, const TargetSet& ts,
                                       const char* who) {
  std::vector<MeroFunction> out;
  for (size_t j = 0; j < ts.targets.size(); ++j) {
    MeroFunction comp = compose_with_curve(ts.targets[j], c);
    if (comp.is_zero())
      throw Error(ErrorKind::DegenerateInput,
                  std::string("Q_") + std::to_string(j + 1) + "(" + who +
                      ") vanishes identically (degenerate against the "
                      "nondegeneracy hypothesis)");
    out.push_back(std::move(comp));
  }
  return out;
}

bool both_exact(const Curve& f, const Curve& g) {
  return f.is_exact() && g.is_exact();
}

// greedy clustering of located points by certified overlap
struct MergedPoint {
  CBall location;
  std::vector<std::pair<int, int>> members; // (divisor index, multiplicity)
};

std::vector<MergedPoint> merge_points(
    const std::vector<std::vector<DivisorPoint>>& divisors) {
  struct Entry {
    CBall loc;
    int source;
    int mult;
  };
  std::vector<Entry> entries;
  for (size_t d = 0; d < divisors.size(); ++d)
    for (const auto& p : divisors[d])
      entries.push_back({p.location, static_cast<int>(d), p.multiplicity});
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.loc.real_mid() != b.loc.real_mid())
      return a.loc.real_mid() < b.loc.real_mid();
    return a.loc.imag_mid() < b.loc.imag_mid();
  });
  std::vector<MergedPoint> merged;
  for (const auto& e : entries) {
    bool placed = false;
    for (auto& m : merged) {
      double dist = std::hypot(m.location.real_mid() - e.loc.real_mid(),
                               m.location.imag_mid() - e.loc.imag_mid());
      if (dist <= m.location.total_rad() + e.loc.total_rad() + 1e-12) {
        m.members.emplace_back(e.source, e.mult);
        if (e.loc.total_rad() < m.location.total_rad()) m.location = e.loc;
        placed = true;
        break;
      }
    }
    if (!placed) merged.push_back({e.loc, {{e.source, e.mult}}});
  }
  return merged;
}

} // namespace

SharedPreimageSet shared_preimage_set(const Curve& f, const Curve& g,
                                      const TargetSet& ts, double R_max,
                                      prec_t prec) {
  int q = ts.q();
  SharedPreimageSet out;
  if (both_exact(f, g)) {
    out.exact = true;
    out.disk_radius = std::numeric_limits<double>::infinity();
    std::vector<Poly> inputs;
    for (const auto& h : compositions(f, ts, "f"))
      inputs.push_back(h.as_ratfunc().num());
    for (const auto& h : compositions(g, ts, "g"))
      inputs.push_back(h.as_ratfunc().num());
    ZeroFindOptions zopts;
    zopts.prec = prec;
    PointSystem ps(inputs, zopts);
    for (const auto& pt : ps.points()) {
      SharedPoint sp;
      sp.location = pt.location;
      sp.f_orders.resize(q);
      sp.g_orders.resize(q);
      bool any = false;
      for (int j = 0; j < q; ++j) {
        sp.f_orders[j] = ps.order_at_point(j, pt);
        sp.g_orders[j] = ps.order_at_point(q + j, pt);
        any = any || sp.f_orders[j] > 0 || sp.g_orders[j] > 0;
      }
      if (any) out.points.push_back(std::move(sp));
    }
    return out;
  }
  out.exact = false;
  out.disk_radius = R_max;
  ZeroFindOptions zopts;
  zopts.prec = prec;
  std::vector<std::vector<DivisorPoint>> located(2 * q);
  auto comp_f = compositions(f, ts, "f");
  auto comp_g = compositions(g, ts, "g");
  for (int j = 0; j < q; ++j) {
    located[j] = zero_divisor(comp_f[j], R_max, zopts).points;
    located[q + j] = zero_divisor(comp_g[j], R_max, zopts).points;
  }
  for (const auto& m : merge_points(located)) {
    SharedPoint sp;
    sp.location = m.location;
    sp.f_orders.assign(q, 0);
    sp.g_orders.assign(q, 0);
    for (auto [src, mult] : m.members) {
      if (src < q)
        sp.f_orders[src] += mult;
      else
        sp.g_orders[src - q] += mult;
    }
    out.points.push_back(std::move(sp));
  }
  return out;
}

ConditionIReport condition_i_check(const Curve& f, const Curve& g,
                                   const TargetSet& ts, int p, double R_max,
                                   prec_t prec) {
  if (p < 1) throw Error(ErrorKind::InvalidInput, "condition i needs p >= 1");
  ConditionIReport report;
  report.p = p;
  int n = ts.n;
  if (both_exact(f, g)) {
    report.exact_route = true;
    Poly W = Poly::one();
    for (const auto& h : compositions(f, ts, "f"))
      W *= squarefree_part(h.as_ratfunc().num());
    for (const auto& h : compositions(g, ts, "g"))
      W *= squarefree_part(h.as_ratfunc().num());
    W = squarefree_part(W);
    if (W.degree() < 1) {
      report.passed = true;
      report.exclusions.push_back("shared preimage set is empty");
      return report;
    }
    const auto& fc = f.poly().comps;
    const auto& gc = g.poly().comps;
    for (int s = 0; s <= n; ++s) {
      Poly prod = fc[s] * gc[s];
      if (prod.is_zero()) {
        report.exclusions.push_back("s=" + std::to_string(s) +
                                    ": f_s*g_s vanishes identically; pairs excluded");
        continue;
      }
      Poly excl = poly_gcd(W, squarefree_part(prod));
      Poly ws = excl.degree() >= 1 ? exact_div(W, excl).monic() : W;
      if (excl.degree() >= 1)
        report.exclusions.push_back("s=" + std::to_string(s) + ": points of " +
                                    to_string(excl) + " excluded (f_s*g_s = 0 there)");
      if (ws.degree() < 1) continue;
      for (int k = 0; k <= n; ++k) {
        if (k == s) continue;
        Poly h = fc[k] * gc[s] - gc[k] * fc[s];
        if (h.is_zero()) continue;
        if (divides(ws.pow(static_cast<unsigned>(p)), h)) continue;
        PointSystem ps({ws, h});
        for (const auto& pt : ps.points()) {
          if (ps.order_at_point(0, pt) < 1) continue;
          int ord = ps.order_at_point(1, pt);
          if (ord < p) report.failures.push_back({k, s, pt.location, ord});
        }
      }
    }
    report.passed = report.failures.empty();
    return report;
  }

  report.exact_route = false;
  SharedPreimageSet shared = shared_preimage_set(f, g, ts, R_max, prec);
  for (const auto& sp : shared.points) {
    bool any_active = false;
    for (int s = 0; s <= n; ++s) {
      CBall fs = f.component(s).eval(sp.location, prec);
      CBall gs = g.component(s).eval(sp.location, prec);
      if (modulus_sq(fs).contains_zero() || modulus_sq(gs).contains_zero())
        continue; // not certified active for this s
      any_active = true;
      for (int k = 0; k <= n; ++k) {
        if (k == s) continue;
        Jet jf = jet_of_ratio(f, k, s, sp.location, p, prec);
        Jet jg = jet_of_ratio(g, k, s, sp.location, p, prec);
        for (int ord = 0; ord < p; ++ord) {
          CBall diff = jf.values[ord] - jg.values[ord];
          if (!diff.contains_zero()) {
            report.failures.push_back({k, s, sp.location, ord});
            break;
          }
        }
      }
    }
    if (!any_active)
      report.exclusions.push_back("point " + to_string(sp.location) +
                                  ": no s with certified nonzero f_s*g_s");
  }
  report.passed = report.failures.empty();
  return report;
}

ConditionIIReport condition_ii_check(const Curve& f, const TargetSet& ts,
                                     double R_max, prec_t prec) {
  ConditionIIReport report;
  int q = ts.q();
  ZeroFindOptions zopts;
  zopts.prec = prec;
  if (f.is_exact()) {
    std::vector<Poly> radicals;
    for (const auto& h : compositions(f, ts, "f"))
      radicals.push_back(squarefree_part(h.as_ratfunc().num()));
    for (int i = 0; i < q; ++i)
      for (int j = i + 1; j < q; ++j) {
        Poly g = poly_gcd(radicals[i], radicals[j]);
        if (g.degree() < 1) continue;
        for (const auto& z : isolate_poly_roots(g, std::nullopt, zopts))
          report.violations.push_back({i, j, z.point});
      }
    report.passed = report.violations.empty();
    return report;
  }
  auto comp = compositions(f, ts, "f");
  std::vector<std::vector<DivisorPoint>> located(q);
  for (int j = 0; j < q; ++j) located[j] = zero_divisor(comp[j], R_max, zopts).points;
  for (int i = 0; i < q; ++i)
    for (int j = i + 1; j < q; ++j)
      for (const auto& a : located[i])
        for (const auto& b : located[j]) {
          double dist = std::hypot(a.location.real_mid() - b.location.real_mid(),
                                   a.location.imag_mid() - b.location.imag_mid());
          if (dist <= a.location.total_rad() + b.location.total_rad() + 1e-12)
            report.violations.push_back({i, j, a.location});
        }
  report.passed = report.violations.empty();
  return report;
}

bool maps_identical(const Curve& f, const Curve& g) {
  if (f.dim() != g.dim())
    throw Error(ErrorKind::InvalidInput, "comparing maps into different spaces");
  int n = f.dim();
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      ExpPolySum cross = f.component_sum(i) * g.component_sum(j) -
                         f.component_sum(j) * g.component_sum(i);
      if (!cross.is_zero()) return false;
    }
  return true;
}

namespace {

struct SamplerContext {
  bool exact;
  Poly W_f; // radical of the union of f-target preimages (exact route)
  Poly W_g;
  std::vector<SharedPoint> shared; // located points (numeric route)
};

bool hyperplane_ok(const SamplerContext& ctx, const Curve& f, const Curve& g,
                   const std::vector<GaussQ>& h, prec_t prec) {
  int n = f.dim();
  ExpPolySum Lf, Lg;
  for (int k = 0; k <= n; ++k) {
    Poly c{h[k]};
    Lf += c * f.component_sum(k);
    Lg += c * g.component_sum(k);
  }
  if (Lf.is_zero() || Lg.is_zero()) return false;
  if (ctx.exact) {
    if (poly_gcd(squarefree_part(Lf.as_polynomial()), ctx.W_f).degree() >= 1)
      return false;
    if (poly_gcd(squarefree_part(Lg.as_polynomial()), ctx.W_g).degree() >= 1)
      return false;
    return true;
  }
  for (const auto& sp : ctx.shared) {
    if (modulus_sq(Lf.eval(sp.location, prec)).contains_zero()) return false;
    if (modulus_sq(Lg.eval(sp.location, prec)).contains_zero()) return false;
  }
  return true;
}

SamplerContext make_sampler_context(const Curve& f, const Curve& g,
                                    const TargetSet& ts, double R_max,
                                    prec_t prec) {
  SamplerContext ctx;
  ctx.exact = both_exact(f, g);
  if (ctx.exact) {
    ctx.W_f = Poly::one();
    for (const auto& c : compositions(f, ts, "f"))
      ctx.W_f *= squarefree_part(c.as_ratfunc().num());
    ctx.W_f = squarefree_part(ctx.W_f);
    ctx.W_g = Poly::one();
    for (const auto& c : compositions(g, ts, "g"))
      ctx.W_g *= squarefree_part(c.as_ratfunc().num());
    ctx.W_g = squarefree_part(ctx.W_g);
  } else {
    ctx.shared = shared_preimage_set(f, g, ts, R_max, prec).points;
  }
  return ctx;
}

} // namespace

HyperplanePair hyperplane_pair_sampler(const Curve& f, const Curve& g,
                                       const TargetSet& ts, std::uint64_t seed,
                                       double R_max, prec_t prec, int budget) {
  if (maps_identical(f, g))
    throw Error(ErrorKind::InvalidInput,
                "sampler precondition violated: f == g makes S vanish identically");
  if (f.is_constant_map() || g.is_constant_map())
    throw Error(ErrorKind::InvalidInput, "sampler needs nonconstant maps");
  SamplerContext ctx = make_sampler_context(f, g, ts, R_max, prec);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num_dist(-9, 9);
  std::uniform_int_distribution<long> den_dist(1, 3);
  int n = f.dim();
  auto draw = [&]() {
    std::vector<GaussQ> h(n + 1);
    bool nonzero = false;
    for (int k = 0; k <= n; ++k) {
      h[k] = GaussQ(make_rat(num_dist(rng), den_dist(rng)),
                    make_rat(num_dist(rng), den_dist(rng)));
      nonzero = nonzero || !h[k].is_zero();
    }
    if (!nonzero) h[0] = GaussQ(1L);
    return h;
  };
  for (int attempt = 1; attempt <= budget; ++attempt) {
    std::vector<GaussQ> h1 = draw();
    std::vector<GaussQ> h2 = draw();
    if (!hyperplane_ok(ctx, f, g, h1, prec)) continue;
    if (!hyperplane_ok(ctx, f, g, h2, prec)) continue;
    ExpPolySum L1f, L2f, L1g, L2g;
    for (int k = 0; k <= n; ++k) {
      L1f += Poly(h1[k]) * f.component_sum(k);
      L2f += Poly(h2[k]) * f.component_sum(k);
      L1g += Poly(h1[k]) * g.component_sum(k);
      L2g += Poly(h2[k]) * g.component_sum(k);
    }
    ExpPolySum S_num = L1f * L2g - L1g * L2f;
    if (S_num.is_zero()) continue;
    HyperplanePair out;
    out.h1 = std::move(h1);
    out.h2 = std::move(h2);
    out.S_num = std::move(S_num);
    out.S_den = L2f * L2g;
    out.attempts_used = attempt;
    return out;
  }
  throw Error(ErrorKind::SamplerExhausted,
              "no admissible hyperplane pair within the retry budget");
}

bool verify_hyperplane_pair(const HyperplanePair& pair, const Curve& f,
                            const Curve& g, const TargetSet& ts, double R_max,
                            prec_t prec) {
  SamplerContext ctx = make_sampler_context(f, g, ts, R_max, prec);
  if (!hyperplane_ok(ctx, f, g, pair.h1, prec)) return false;
  if (!hyperplane_ok(ctx, f, g, pair.h2, prec)) return false;
  if (pair.S_num.is_zero()) return false;
  int n = f.dim();
  ExpPolySum L1f, L2f, L1g, L2g;
  for (int k = 0; k <= n; ++k) {
    L1f += Poly(pair.h1[k]) * f.component_sum(k);
    L2f += Poly(pair.h2[k]) * f.component_sum(k);
    L1g += Poly(pair.h1[k]) * g.component_sum(k);
    L2g += Poly(pair.h2[k]) * g.component_sum(k);
  }
  if (!(L1f * L2g - L1g * L2f == pair.S_num)) return false;
  if (!(L2f * L2g == pair.S_den)) return false;
  return true;
}

DivisorInequalityReport divisor_inequality_check(const Curve& f, const Curve& g,
                                                 const TargetSet& ts, int p,
                                                 const HyperplanePair& pair) {
  if (!both_exact(f, g))
    throw Error(ErrorKind::InvalidInput,
                "divisor inequality diagnostics need the exact curve model");
  DivisorInequalityReport report;
  report.p = p;
  int n = ts.n, q = ts.q();
  AdmissibilityReport adm = admissible(ts.targets, n);
  for (const auto& [subset, R] : adm.subset_resultants)
    if (R.is_zero())
      throw Error(ErrorKind::InvalidInput,
                  "divisor diagnostics need an admissible family (a subset "
                  "resultant vanishes identically)");
  std::vector<Poly> inputs;
  for (const auto& h : compositions(f, ts, "f"))
    inputs.push_back(h.as_ratfunc().num()); // 0..q-1
  for (const auto& h : compositions(g, ts, "g"))
    inputs.push_back(h.as_ratfunc().num()); // q..2q-1
  Poly S_num = pair.S_num.as_polynomial();
  inputs.push_back(S_num); // 2q
  int first_res = static_cast<int>(inputs.size());
  for (const auto& [subset, R] : adm.subset_resultants)
    inputs.push_back(R.num());
  int first_excl = static_cast<int>(inputs.size());
  const auto& fc = f.poly().comps;
  const auto& gc = g.poly().comps;
  std::vector<int> excl_for_s;
  for (int s = 0; s <= n; ++s) {
    Poly prod = fc[s] * gc[s];
    if (prod.is_zero()) {
      excl_for_s.push_back(-1);
      continue;
    }
    excl_for_s.push_back(static_cast<int>(inputs.size()));
    inputs.push_back(prod);
  }
  int h2_idx = static_cast<int>(inputs.size());
  inputs.push_back(pair.S_den.as_polynomial());

  PointSystem ps(inputs);
  report.pointwise_bound_ok = true;
  report.s_order_ok = true;
  for (const auto& pt : ps.points()) {
    bool f_side = false;
    int lhs = 0;
    long sum_f = 0;
    for (int j = 0; j < q; ++j) {
      int ord = ps.order_at_point(j, pt);
      if (ord > 0) f_side = true;
      lhs += ord > 0 ? 1 : 0;
      sum_f += ord;
    }
    if (!f_side) continue;
    long sum_res = 0;
    for (int r = first_res; r < first_excl; ++r)
      sum_res += ps.order_at_point(r, pt);
    DivisorInequalityRow row;
    row.location = pt.location;
    row.lhs = lhs;
    row.rhs = n * (sum_f > 0 ? 1 : 0) +
              (q - n) * (sum_res > 0 ? 1 : 0);
    row.nu_S = ps.order_at_point(2 * q, pt);
    bool some_s_active = false;
    for (int s = 0; s <= n; ++s)
      if (excl_for_s[s] >= 0 && ps.order_at_point(excl_for_s[s], pt) == 0)
        some_s_active = true;
    bool h2_clear = ps.order_at_point(h2_idx, pt) == 0;
    if (!some_s_active) {
      row.excluded = true;
      row.exclusion_reason = "every s has f_s*g_s vanishing here";
    } else if (!h2_clear) {
      row.excluded = true;
      row.exclusion_reason = "H2 preimage meets the point";
    }
    row.s_condition_ok = row.excluded || row.nu_S >= p;
    if (!row.s_condition_ok) report.s_order_ok = false;
    if (row.lhs > row.rhs) report.pointwise_bound_ok = false;
    report.rows.push_back(row);
  }
  return report;
}

SmtProbeReport smt_inequality_probe(const Curve& f, const TargetSet& ts,
                                    const Truncation& L, const RadiusGrid& grid,
                                    prec_t prec) {
  SmtProbeReport report;
  int n = ts.n, q = ts.q();
  double r_loc = grid.radii.back() * 1.001;
  ZeroFindOptions zopts;
  zopts.prec = prec;
  std::vector<Divisor> divisors;
  for (const auto& comp : compositions(f, ts, "f"))
    divisors.push_back(zero_divisor(comp, r_loc, zopts));
  int holding = 0;
  for (double r : grid.radii) {
    SmtProbeRow row;
    row.r = r;
    row.lhs = (q - n - 1.5) * characteristic(f, r, prec).value;
    row.rhs = 0.0;
    for (int j = 0; j < q; ++j)
      row.rhs += counting_function(divisors[j], r, L, grid.tau) /
                 ts.targets[j].degree();
    row.slack = row.rhs - row.lhs;
    if (row.slack >= -1e-9) ++holding;
    report.rows.push_back(row);
  }
  report.fraction_holding =
      report.rows.empty() ? 1.0 : static_cast<double>(holding) / report.rows.size();
  report.caveat =
      "finitely many failing radii are compatible with the exceptional Borel set E";
  return report;
}

const char* classification_name(Classification c) {
  switch (c) {
    case Classification::ConsistentWithTheorem: return "consistent_with_theorem";
    case Classification::HypothesisFailed: return "hypothesis_failed";
    case Classification::TheoremViolation: return "THEOREM_VIOLATION";
  }
  return "unknown";
}

Classification classify_verdict(std::span<const HypothesisResult> hypotheses,
                                bool threshold_satisfied, bool conclusion_identical) {
  if (conclusion_identical) return Classification::ConsistentWithTheorem;
  bool all_pass = threshold_satisfied;
  for (const auto& h : hypotheses) all_pass = all_pass && h.passed;
  return all_pass ? Classification::TheoremViolation
                  : Classification::HypothesisFailed;
}

namespace {

RadiusGrid default_grid(bool exact, double R_max,
                        std::span<const Divisor* const> divisors) {
  if (exact) return make_radius_grid(2.0, 40.0, 8, divisors);
  double hi = std::max(3.0, R_max * 0.92);
  return make_radius_grid(2.0, hi, 6, divisors);
}

} // namespace

ExperimentVerdict uniqueness_experiment(const Curve& f, const Curve& g,
                                        const TargetSet& ts,
                                        const ExperimentOptions& opts) {
  ExperimentVerdict verdict;
  int n = ts.n, q = ts.q();
  std::vector<int> degs = ts.degrees();

  // --- hypotheses, in spec order ---
  {
    HypothesisResult h;
    h.name = "admissible";
    AdmissibilityReport adm = admissible(ts.targets, n);
    h.passed = adm.admissible;
    if (!adm.admissible && adm.failing_subset) {
      h.detail = "failing subset {";
      for (size_t k = 0; k < adm.failing_subset->size(); ++k) {
        if (k) h.detail += ",";
        h.detail += ts.names[(*adm.failing_subset)[k]];
      }
      h.detail += "}: resultant vanishes identically";
    }
    verdict.hypotheses.push_back(std::move(h));
  }
  {
    HypothesisResult h;
    h.name = "smallness";
    h.passed = true;
    for (size_t j = 0; j < ts.targets.size(); ++j)
      for (const auto& [I, c] : ts.targets[j].coeffs()) {
        for (const Curve* cur : {&f, &g}) {
          SmallnessReport sr = smallness_classify(c, *cur, nullptr, opts.prec);
          if (sr.verdict != Smallness::Small) {
            h.passed = false;
            if (!h.detail.empty()) h.detail += "; ";
            h.detail += ts.names[j] + " coeff " + to_string(I) + " vs " +
                        (cur == &f ? "f" : "g") + ": " + sr.rule;
          }
        }
      }
    verdict.hypotheses.push_back(std::move(h));
  }
  {
    std::vector<RatFunc> gens = default_field_generators(ts.targets);
    for (const Curve* cur : {&f, &g}) {
      HypothesisResult h;
      h.name = cur == &f ? "nondegenerate_f" : "nondegenerate_g";
      h.passed = true;
      for (size_t j = 0; j < ts.targets.size(); ++j) {
        MeroFunction comp = compose_with_curve(ts.targets[j], *cur);
        if (comp.is_zero()) {
          h.passed = false;
          h.detail = ts.names[j] + " composes to zero: explicit relation";
        }
      }
      if (h.passed) {
        NondegeneracyReport rep = nondegeneracy_search(
            *cur, gens, opts.nondeg_degree_max, opts.nondeg_deg_z_max);
        if (rep.relation_found) {
          h.passed = false;
          h.detail = "relation found: " + to_string(*rep.relation);
        } else {
          h.detail = "no relation within bounds (" + rep.searched_space +
                     "); not a proof of nondegeneracy";
        }
      }
      verdict.hypotheses.push_back(std::move(h));
    }
  }
  ConditionIReport cond_i = condition_i_check(f, g, ts, opts.p, opts.R_max, opts.prec);
  {
    HypothesisResult h;
    h.name = "condition_i";
    h.passed = cond_i.passed;
    if (!cond_i.failures.empty()) {
      const auto& fail = cond_i.failures.front();
      h.detail = "pair (k=" + std::to_string(fail.k) + ",s=" + std::to_string(fail.s) +
                 ") agrees only to order " + std::to_string(fail.order_found) +
                 " < p at " + to_string(fail.witness);
    }
    verdict.hypotheses.push_back(std::move(h));
  }
  if (opts.variant == 'b') {
    ConditionIIReport cond_ii = condition_ii_check(f, ts, opts.R_max, opts.prec);
    HypothesisResult h;
    h.name = "condition_ii";
    h.passed = cond_ii.passed;
    if (!cond_ii.violations.empty()) {
      const auto& v = cond_ii.violations.front();
      h.detail = ts.names[v.i] + " and " + ts.names[v.j] +
                 " share the preimage point " + to_string(v.witness);
    }
    verdict.hypotheses.push_back(std::move(h));
  }

  verdict.threshold =
      threshold_check(n, q, opts.p, degs, opts.variant, opts.fixed_targets);
  verdict.conclusion_identical = maps_identical(f, g);
  verdict.classification = classify_verdict(
      verdict.hypotheses, verdict.threshold.satisfied, verdict.conclusion_identical);
  for (const auto& h : verdict.hypotheses)
    if (!h.passed) verdict.failed.push_back(h.name);
  if (!verdict.threshold.satisfied) verdict.failed.push_back("threshold");

  if (!opts.diagnostics) return verdict;

  // --- diagnostics ---
  ZeroFindOptions zopts;
  zopts.prec = opts.prec;
  bool exact = both_exact(f, g);
  auto comp_f = compositions(f, ts, "f");
  auto comp_g = compositions(g, ts, "g");
  double grid_top = opts.grid ? opts.grid->radii.back()
                              : (exact ? 40.0 : std::max(3.0, opts.R_max * 0.92));
  double r_loc_hint = std::max(opts.R_max, grid_top * 1.001);
  std::vector<Divisor> div_f, div_g;
  for (int j = 0; j < q; ++j) {
    div_f.push_back(zero_divisor(comp_f[j], r_loc_hint, zopts));
    div_g.push_back(zero_divisor(comp_g[j], r_loc_hint, zopts));
  }
  std::vector<const Divisor*> dptrs;
  for (const auto& d : div_f) dptrs.push_back(&d);
  for (const auto& d : div_g) dptrs.push_back(&d);
  RadiusGrid grid = opts.grid ? *opts.grid : default_grid(exact, r_loc_hint, dptrs);

  for (int j = 0; j < q; ++j)
    verdict.fmt_reports.emplace_back(ts.names[j],
                                     fmt_probe(f, ts.targets[j], grid, opts.prec));

  EffectiveConstants eff = effective_constants(n, q, degs, opts.fixed_targets);
  Truncation trunc = eff.L_exact ? Truncation::level(*eff.L_exact)
                                 : Truncation::infinite();
  verdict.smt_report = smt_inequality_probe(f, ts, trunc, grid, opts.prec);

  double Lval = eff.L_exact ? mpz_get_d(eff.L_exact->get_mpz_t())
                            : std::numeric_limits<double>::infinity();
  std::string lnote =
      std::isinf(Lval) ? " [L astronomically large; shown as inf]" : "";

  std::optional<HyperplanePair> pair;
  if (!verdict.conclusion_identical) {
    try {
      pair = hyperplane_pair_sampler(f, g, ts, opts.seed, opts.R_max, opts.prec);
      verdict.sampler_note =
          "hyperplane pair accepted after " + std::to_string(pair->attempts_used) +
          " draw(s)";
    } catch (const Error& e) {
      verdict.sampler_note = std::string("sampler unavailable: ") + e.what();
    }
  } else {
    verdict.sampler_note = "f == g: S-function diagnostics do not apply";
  }

  std::optional<Divisor> div_S;
  if (pair) {
    if (exact) {
      RatFunc S(pair->S_num.as_polynomial(), pair->S_den.as_polynomial());
      div_S = zero_divisor(MeroFunction(S), r_loc_hint, zopts);
    } else {
      MeroFunction Snum(pair->S_num, Poly::one());
      Divisor dnum = zero_divisor(Snum, r_loc_hint, zopts);
      // drop zeros shared with the denominator (S = S_num / S_den)
      MeroFunction Sden(pair->S_den, Poly::one());
      Divisor dden = zero_divisor(Sden, r_loc_hint, zopts);
      Divisor d;
      d.source = "S";
      d.disk_radius = dnum.disk_radius;
      for (const auto& pz : dnum.points) {
        int mult = pz.multiplicity;
        for (const auto& pd : dden.points) {
          double dist = std::hypot(pz.location.real_mid() - pd.location.real_mid(),
                                   pz.location.imag_mid() - pd.location.imag_mid());
          if (dist <= pz.location.total_rad() + pd.location.total_rad() + 1e-12)
            mult -= pd.multiplicity;
        }
        if (mult > 0) {
          DivisorPoint copy = pz;
          copy.multiplicity = mult;
          d.points.push_back(copy);
        }
      }
      div_S = std::move(d);
    }
  }

  Truncation one = Truncation::level(Int(1));
  auto T_f = [&](double r) { return characteristic(f, r, opts.prec).value; };
  auto T_g = [&](double r) { return characteristic(g, r, opts.prec).value; };
  auto sumN1 = [&](const std::vector<Divisor>& ds, double r) {
    double s = 0;
    for (const auto& d : ds) s += counting_function(d, r, one, grid.tau);
    return s;
  };

  NamedTrace t4a{"display_4a", "sum_j N_f^(1)(r,Q_j) <= (n/p) N_S(r) + o(T_f)", {}};
  NamedTrace t4{"display_4", "N_S(r) <= T_f(r) + T_g(r) + O(1)", {}};
  NamedTrace t5{"display_5",
                "sum_j (N_f^(1)+N_g^(1)) <= (2n/p)(T_f+T_g) + o(T_f)", {}};
  NamedTrace t6{"display_6", "(q-n-3/2) T_f <= q L T_g + o(T_f)" + lnote, {}};
  NamedTrace t7{"display_7",
                "(q-n-3/2)(T_f+T_g) <= (L/d~) sum_j (N_f^(1)+N_g^(1))" + lnote, {}};
  NamedTrace t8{"display_8",
                "(q-n-3/2)(T_f+T_g) <= (2nL/(p d~))(T_f+T_g) + o(T_f)" + lnote, {}};
  double dmin = mpz_get_d(eff.degrees.min_degree.get_mpz_t());
  for (double r : grid.radii) {
    double tf = T_f(r), tg = T_g(r);
    double nf1 = sumN1(div_f, r), ng1 = sumN1(div_g, r);
    if (div_S) {
      double ns = counting_function(*div_S, r, Truncation::infinite(), grid.tau);
      t4a.rows.push_back({r, nf1, (static_cast<double>(n) / opts.p) * ns});
      t4.rows.push_back({r, ns, tf + tg});
      t5.rows.push_back({r, nf1 + ng1, (2.0 * n / opts.p) * (tf + tg)});
    }
    t6.rows.push_back({r, (q - n - 1.5) * tf, q * Lval * tg});
    t7.rows.push_back({r, (q - n - 1.5) * (tf + tg), (Lval / dmin) * (nf1 + ng1)});
    t8.rows.push_back({r, (q - n - 1.5) * (tf + tg),
                       (2.0 * n * Lval / (opts.p * dmin)) * (tf + tg)});
  }
  if (div_S) {
    verdict.traces.push_back(std::move(t4a));
    verdict.traces.push_back(std::move(t4));
    verdict.traces.push_back(std::move(t5));
  }
  verdict.traces.push_back(std::move(t6));
  verdict.traces.push_back(std::move(t7));
  verdict.traces.push_back(std::move(t8));

  if (pair && exact && cond_i.passed) {
    try {
      verdict.divisor_report = divisor_inequality_check(f, g, ts, opts.p, *pair);
    } catch (const Error& e) {
      verdict.sampler_note += std::string("; divisor diagnostics skipped: ") + e.what();
    }
  }
  return verdict;
}

} // namespace mhlab
