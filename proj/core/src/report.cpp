#include "mhlab/report.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include <json.hpp>

namespace mhlab {

using Json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

struct CommandContext {
  const InstanceDocument& doc;
  const RunOptions& opts;
  std::ostream& out;
  Json machine;
  int exit_code = 0;

  void finish() { out << "--- machine ---\n" << machine.dump() << "\n"; }
};

void write_csv(const RunOptions& opts, const std::string& name,
               const std::vector<std::array<double, 4>>& rows) {
  if (!opts.trace_prefix) return;
  std::ofstream f(*opts.trace_prefix + "-" + name + ".csv");
  f << "r,lhs,rhs,slack\n";
  for (const auto& r : rows)
    f << format_double(r[0]) << "," << format_double(r[1]) << ","
      << format_double(r[2]) << "," << format_double(r[3]) << "\n";
}

const Curve& require_curve(const InstanceDocument& doc, char which) {
  const std::optional<Curve>& c = which == 'f' ? doc.f : doc.g;
  if (!c)
    throw Error(ErrorKind::InvalidInput,
                std::string("this command needs curve ") + which);
  return *c;
}

const TargetSet& require_targets(const InstanceDocument& doc, int at_least) {
  if (doc.targets.q() < at_least)
    throw Error(ErrorKind::InvalidInput,
                "this command needs at least " + std::to_string(at_least) +
                    " target(s)");
  return doc.targets;
}

RadiusGrid grid_for(const InstanceDocument& doc,
                    std::span<const Divisor* const> divisors) {
  if (doc.params.radii) {
    RadiusGrid g;
    g.radii = *doc.params.radii;
    return g;
  }
  double hi = std::max(3.0, doc.params.rmax * 0.92);
  return make_radius_grid(2.0, hi, 8, divisors);
}

std::string big_to_string(const Int& v) {
  long digits = decimal_digits(v);
  if (digits <= 40) return v.get_str();
  std::string s = v.get_str();
  return s.substr(0, 12) + "... (" + std::to_string(digits) + " digits)";
}

Json threshold_json(const ThresholdReport& th) {
  Json j;
  j["variant"] = std::string(1, th.variant);
  j["p"] = th.p;
  j["q"] = th.q;
  if (th.threshold) {
    j["threshold_exact"] = th.threshold->get_str();
    j["threshold_approx"] = th.threshold->get_d();
  } else {
    j["threshold_digits"] = th.threshold_digits;
  }
  j["satisfied"] = th.satisfied;
  return j;
}

std::string threshold_text(const ThresholdReport& th) {
  std::string out = "threshold[";
  out += th.variant;
  out += ", p=" + std::to_string(th.p) + "] = ";
  if (th.threshold)
    out += th.threshold->get_str() + " (~" + format_double(th.threshold->get_d()) + ")";
  else
    out += "about 10^" + std::to_string(th.threshold_digits);
  out += "; q = " + std::to_string(th.q) +
         (th.satisfied ? " > threshold: satisfied" : " <= threshold: not satisfied");
  return out;
}

struct ConstantsInput {
  int n;
  int q;
  std::vector<int> degrees;
};

ConstantsInput constants_input(const InstanceDocument& doc) {
  ConstantsInput in;
  in.n = doc.n;
  if (doc.targets.q() > 0) {
    in.q = doc.targets.q();
    in.degrees = doc.targets.degrees();
  } else if (doc.params.q && doc.params.degrees) {
    in.q = *doc.params.q;
    in.degrees = *doc.params.degrees;
  } else if (doc.params.q) {
    in.q = *doc.params.q;
    in.degrees.assign(in.q, 1);
  } else {
    throw Error(ErrorKind::InvalidInput,
                "constants needs targets or params q/degrees");
  }
  if (static_cast<int>(in.degrees.size()) != in.q)
    throw Error(ErrorKind::InvalidInput, "degrees list does not match q");
  return in;
}

void cmd_constants(CommandContext& ctx) {
  ConstantsInput in = constants_input(ctx.doc);
  bool fixed = ctx.doc.params.fixed_targets;
  EffectiveConstants c = effective_constants(in.n, in.q, in.degrees, fixed);
  ctx.out << "effective constants\n";
  ctx.out << "n = " << in.n << "  q = " << in.q << "  fixed_targets = "
          << (fixed ? "true" : "false") << "\n";
  ctx.out << "d (lcm) = " << c.degrees.lcm_degree.get_str()
          << "  d* = " << c.degrees.max_degree.get_str()
          << "  d~ = " << c.degrees.min_degree.get_str() << "\n";
  ctx.out << "N = " << c.N.get_str() << "\n";
  ctx.out << "C(n+N, n) = " << c.binom_C.get_str() << "\n";
  if (c.t.exact)
    ctx.out << "t = " << big_to_string(*c.t.exact) << "  digits_t = " << c.t.digits
            << "\n";
  else
    ctx.out << "t = " << big_to_string(c.t.base) << "^" << c.t.exponent.get_str()
            << "  digits_t = " << c.t.digits << "\n";
  if (c.L_exact)
    ctx.out << "L = " << big_to_string(*c.L_exact) << "  digits_L = " << c.digits_L
            << "\n";
  else
    ctx.out << "L: not materialized; digits_L = " << c.digits_L << "\n";
  ThresholdReport ta =
      threshold_check(in.n, in.q, ctx.doc.params.p, in.degrees, 'a', fixed);
  ThresholdReport tb =
      threshold_check(in.n, in.q, ctx.doc.params.p, in.degrees, 'b', fixed);
  ctx.out << threshold_text(ta) << "\n" << threshold_text(tb) << "\n";

  Json& m = ctx.machine;
  m["command"] = "constants";
  m["n"] = in.n;
  m["q"] = in.q;
  m["degrees"] = in.degrees;
  m["fixed_targets"] = fixed;
  m["N"] = c.N.get_str();
  m["binom_C"] = c.binom_C.get_str();
  m["digits_t"] = c.t.digits;
  if (c.t.exact && c.t.digits <= 64) m["t"] = c.t.exact->get_str();
  m["digits_L"] = c.digits_L;
  if (c.L_exact && c.digits_L <= 64) m["L"] = c.L_exact->get_str();
  m["threshold_a"] = threshold_json(ta);
  m["threshold_b"] = threshold_json(tb);
}

void cmd_resultant(CommandContext& ctx) {
  const TargetSet& ts = require_targets(ctx.doc, ctx.doc.n + 1);
  if (ts.q() != ctx.doc.n + 1)
    throw Error(ErrorKind::InvalidInput, "resultant needs exactly n+1 targets");
  std::vector<MovingHomPoly> eq = raise_to_common_degree(ts.targets);
  RatFunc R = macaulay_resultant(eq);
  ctx.out << "macaulay resultant (after degree equalization to d = "
          << eq[0].degree() << ")\n";
  ctx.out << "R = " << to_string(R) << "\n";
  ctx.out << (R.is_zero() ? "R vanishes identically: the family is NOT admissible\n"
                          : "R is a nonzero element of the coefficient field\n");
  ctx.machine["command"] = "resultant";
  ctx.machine["common_degree"] = eq[0].degree();
  ctx.machine["resultant"] = to_string(R);
  ctx.machine["zero"] = R.is_zero();
}

void cmd_certificate(CommandContext& ctx) {
  const TargetSet& ts = require_targets(ctx.doc, ctx.doc.n + 1);
  if (ts.q() != ctx.doc.n + 1)
    throw Error(ErrorKind::InvalidInput, "certificate needs exactly n+1 targets");
  std::vector<MovingHomPoly> eq = raise_to_common_degree(ts.targets);
  NssCertificate cert = nss_certificate(eq);
  bool ok = verify_certificate(cert, eq);
  ctx.out << "Nullstellensatz certificate\n";
  ctx.out << "s = " << cert.s << "\n";
  ctx.out << "R = " << to_string(cert.R) << "\n";
  for (size_t i = 0; i < cert.b.size(); ++i)
    for (size_t j = 0; j < cert.b[i].size(); ++j)
      if (!cert.b[i][j].is_zero())
        ctx.out << "b[" << i << "][" << j << "] = " << to_string(cert.b[i][j])
                << "\n";
  ctx.out << "identity x_i^s R = sum_j b_ij Q_j verified by expansion: "
          << (ok ? "yes" : "NO") << "\n";
  ctx.machine["command"] = "certificate";
  ctx.machine["s"] = cert.s;
  ctx.machine["resultant"] = to_string(cert.R);
  ctx.machine["verified"] = ok;
  if (!ok) ctx.exit_code = 1;
}

void cmd_admissible(CommandContext& ctx) {
  const TargetSet& ts = require_targets(ctx.doc, ctx.doc.n + 1);
  AdmissibilityReport rep = admissible(ts.targets, ctx.doc.n);
  ctx.out << "admissibility: checked " << rep.subset_resultants.size()
          << " subset(s) of size n+1 = " << ctx.doc.n + 1 << "\n";
  if (rep.admissible) {
    ctx.out << "admissible\n";
  } else {
    ctx.out << "NOT admissible; failing subset {";
    for (size_t k = 0; k < rep.failing_subset->size(); ++k) {
      if (k) ctx.out << ",";
      ctx.out << ts.names[(*rep.failing_subset)[k]];
    }
    ctx.out << "} has identically vanishing resultant\n";
    ctx.exit_code = 1;
  }
  ctx.machine["command"] = "admissible";
  ctx.machine["admissible"] = rep.admissible;
  if (rep.failing_subset) ctx.machine["failing_subset"] = *rep.failing_subset;
}

void cmd_counting(CommandContext& ctx) {
  const Curve& f = require_curve(ctx.doc, 'f');
  const TargetSet& ts = require_targets(ctx.doc, 1);
  ZeroFindOptions zopts;
  zopts.prec = ctx.doc.params.precision;
  Truncation L = ctx.doc.params.truncation
                     ? Truncation::level(*ctx.doc.params.truncation)
                     : Truncation::infinite();
  std::vector<Divisor> divisors;
  double locate_to = ctx.doc.params.radii
                         ? ctx.doc.params.radii->back() * 1.001
                         : ctx.doc.params.rmax;
  for (const auto& Q : ts.targets) {
    MeroFunction comp = compose_with_curve(Q, f);
    if (comp.is_zero())
      throw Error(ErrorKind::DegenerateInput, "a composition vanishes identically");
    divisors.push_back(zero_divisor(comp, locate_to, zopts));
  }
  std::vector<const Divisor*> dptr;
  for (const auto& d : divisors) dptr.push_back(&d);
  RadiusGrid grid = grid_for(ctx.doc, dptr);
  ctx.out << "truncated counting functions (L = "
          << (L.is_infinite() ? std::string("inf") : L.cap->get_str()) << ")\n";
  Json jd = Json::array();
  for (size_t j = 0; j < divisors.size(); ++j) {
    ctx.out << "target " << ts.names[j] << ": " << divisors[j].points.size()
            << " zero(s), total multiplicity " << divisors[j].total_multiplicity()
            << "\n";
    Json jt;
    jt["target"] = ts.names[j];
    jt["points"] = divisors[j].points.size();
    Json rows = Json::array();
    for (double r : grid.radii) {
      double N = counting_function(divisors[j], r, L, grid.tau);
      ctx.out << "  N(" << format_double(r) << ") = " << format_double(N) << "\n";
      rows.push_back({{"r", r}, {"N", N}});
    }
    jt["rows"] = rows;
    jd.push_back(jt);
  }
  ctx.machine["command"] = "counting";
  ctx.machine["targets"] = jd;
}

void cmd_characteristic(CommandContext& ctx) {
  const Curve& f = require_curve(ctx.doc, 'f');
  RadiusGrid grid = grid_for(ctx.doc, {});
  ctx.out << "characteristic function\n";
  Json rows = Json::array();
  for (double r : grid.radii) {
    CharacteristicValue v =
        characteristic(f, r, ctx.doc.params.precision, ctx.doc.params.quad_tol);
    ctx.out << "T_f(" << format_double(r) << ") = " << format_double(v.value)
            << " +/- " << format_double(v.error) << "\n";
    rows.push_back({{"r", r}, {"T", v.value}, {"err", v.error}});
  }
  ctx.machine["command"] = "characteristic";
  ctx.machine["rows"] = rows;
  if (f.is_exact()) {
    int d = 0;
    for (const auto& c : f.poly().comps) d = std::max(d, c.degree());
    ctx.out << "exact asymptotic slope D = " << d << " (T_f(r) ~ D log r)\n";
    ctx.machine["exact_slope"] = d;
  }
}

void cmd_fmt_check(CommandContext& ctx) {
  const Curve& f = require_curve(ctx.doc, 'f');
  const TargetSet& ts = require_targets(ctx.doc, 1);
  RadiusGrid grid = grid_for(ctx.doc, {});
  bool all_ok = true;
  Json jt = Json::array();
  for (size_t j = 0; j < ts.targets.size(); ++j) {
    FmtProbeReport rep = fmt_probe(f, ts.targets[j], grid, ctx.doc.params.precision);
    ctx.out << "target " << ts.names[j] << ": C_fit = " << format_double(rep.c_fit)
            << "\n";
    std::vector<std::array<double, 4>> csv;
    Json rows = Json::array();
    for (const auto& row : rep.rows) {
      double rhs = row.degree_term + rep.c_fit * row.coeff_term;
      ctx.out << "  r = " << format_double(row.r) << "  N = "
              << format_double(row.counting) << "  bound = " << format_double(rhs)
              << "  margin = " << format_double(row.margin) << "\n";
      if (row.margin < 0) all_ok = false;
      csv.push_back({row.r, row.counting, rhs, row.margin});
      rows.push_back({{"r", row.r},
                      {"counting", row.counting},
                      {"bound", rhs},
                      {"margin", row.margin}});
    }
    write_csv(ctx.opts, "fmt-" + ts.names[j], csv);
    jt.push_back({{"target", ts.names[j]}, {"c_fit", rep.c_fit}, {"rows", rows}});
  }
  ctx.out << (all_ok ? "all margins nonnegative\n" : "NEGATIVE margin found\n");
  ctx.machine["command"] = "fmt-check";
  ctx.machine["targets"] = jt;
  ctx.machine["all_margins_nonnegative"] = all_ok;
  if (!all_ok) ctx.exit_code = 1;
}

void cmd_smt_probe(CommandContext& ctx) {
  const Curve& f = require_curve(ctx.doc, 'f');
  const TargetSet& ts = require_targets(ctx.doc, ctx.doc.n + 1);
  EffectiveConstants eff = effective_constants(
      ctx.doc.n, ts.q(), ts.degrees(), ctx.doc.params.fixed_targets);
  Truncation L =
      eff.L_exact ? Truncation::level(*eff.L_exact) : Truncation::infinite();
  ZeroFindOptions zopts;
  zopts.prec = ctx.doc.params.precision;
  std::vector<Divisor> divisors;
  double locate_to = ctx.doc.params.radii ? ctx.doc.params.radii->back() * 1.001
                                          : ctx.doc.params.rmax;
  for (const auto& Q : ts.targets) {
    MeroFunction comp = compose_with_curve(Q, f);
    if (comp.is_zero())
      throw Error(ErrorKind::DegenerateInput, "a composition vanishes identically");
    divisors.push_back(zero_divisor(comp, locate_to, zopts));
  }
  std::vector<const Divisor*> dptr;
  for (const auto& d : divisors) dptr.push_back(&d);
  RadiusGrid grid = grid_for(ctx.doc, dptr);
  SmtProbeReport rep =
      smt_inequality_probe(f, ts, L, grid, ctx.doc.params.precision);
  ctx.out << "second main theorem probe: (q-n-3/2) T_f(r) vs sum_j N^(L)(r,Q_j)/d_j\n";
  ctx.out << "truncation digits_L = " << eff.digits_L << "\n";
  std::vector<std::array<double, 4>> csv;
  Json rows = Json::array();
  bool all_hold = true;
  for (const auto& row : rep.rows) {
    ctx.out << "  r = " << format_double(row.r) << "  lhs = "
            << format_double(row.lhs) << "  rhs = " << format_double(row.rhs)
            << "  slack = " << format_double(row.slack) << "\n";
    if (row.slack < -1e-9) all_hold = false;
    csv.push_back({row.r, row.lhs, row.rhs, row.slack});
    rows.push_back(
        {{"r", row.r}, {"lhs", row.lhs}, {"rhs", row.rhs}, {"slack", row.slack}});
  }
  write_csv(ctx.opts, "smt", csv);
  ctx.out << "holds at " << format_double(100.0 * rep.fraction_holding)
          << "% of radii (" << rep.caveat << ")\n";
  ctx.machine["command"] = "smt-probe";
  ctx.machine["rows"] = rows;
  ctx.machine["fraction_holding"] = rep.fraction_holding;
  if (!all_hold) ctx.exit_code = 1;
}

void cmd_sample_hyperplanes(CommandContext& ctx) {
  const Curve& f = require_curve(ctx.doc, 'f');
  const Curve& g = require_curve(ctx.doc, 'g');
  const TargetSet& ts = require_targets(ctx.doc, 1);
  HyperplanePair pair =
      hyperplane_pair_sampler(f, g, ts, ctx.doc.params.seed, ctx.doc.params.rmax,
                              ctx.doc.params.precision);
  auto coeffs_text = [](const std::vector<GaussQ>& h) {
    std::string out = "[";
    for (size_t k = 0; k < h.size(); ++k) {
      if (k) out += ", ";
      out += to_string(h[k]);
    }
    return out + "]";
  };
  ctx.out << "hyperplane pair (seed " << ctx.doc.params.seed << ", accepted after "
          << pair.attempts_used << " draw(s))\n";
  ctx.out << "H1 = " << coeffs_text(pair.h1) << "\n";
  ctx.out << "H2 = " << coeffs_text(pair.h2) << "\n";
  ctx.out << "S numerator = " << to_string(pair.S_num) << "\n";
  ctx.out << "S denominator = " << to_string(pair.S_den) << "\n";
  bool ok = verify_hyperplane_pair(pair, f, g, ts, ctx.doc.params.rmax,
                                   ctx.doc.params.precision);
  ctx.out << "postconditions rechecked: " << (ok ? "pass" : "FAIL") << "\n";
  ctx.machine["command"] = "sample-hyperplanes";
  ctx.machine["attempts"] = pair.attempts_used;
  ctx.machine["h1"] = coeffs_text(pair.h1);
  ctx.machine["h2"] = coeffs_text(pair.h2);
  ctx.machine["S_num"] = to_string(pair.S_num);
  ctx.machine["postconditions"] = ok;
  if (!ok) ctx.exit_code = 1;
}

void cmd_uniqueness(CommandContext& ctx) {
  const Curve& f = require_curve(ctx.doc, 'f');
  const Curve& g = require_curve(ctx.doc, 'g');
  const TargetSet& ts = require_targets(ctx.doc, ctx.doc.n + 1);
  ExperimentOptions opts;
  opts.p = ctx.doc.params.p;
  opts.variant = ctx.doc.params.variant;
  opts.fixed_targets = ctx.doc.params.fixed_targets;
  opts.R_max = ctx.doc.params.rmax;
  opts.seed = ctx.doc.params.seed;
  opts.prec = ctx.doc.params.precision;
  opts.nondeg_degree_max = ctx.doc.params.nondeg_degree_max;
  opts.nondeg_deg_z_max = ctx.doc.params.nondeg_deg_z_max;
  if (ctx.doc.params.radii) {
    RadiusGrid grid;
    grid.radii = *ctx.doc.params.radii;
    opts.grid = grid;
  }
  ExperimentVerdict v = uniqueness_experiment(f, g, ts, opts);
  ctx.out << "uniqueness experiment (p = " << opts.p << ", variant " << opts.variant
          << ")\n";
  Json jh = Json::array();
  for (const auto& h : v.hypotheses) {
    ctx.out << "hypothesis " << h.name << ": " << (h.passed ? "PASS" : "FAIL");
    if (!h.detail.empty()) ctx.out << " (" << h.detail << ")";
    ctx.out << "\n";
    jh.push_back({{"name", h.name}, {"passed", h.passed}, {"detail", h.detail}});
  }
  ctx.out << threshold_text(v.threshold) << "\n";
  ctx.out << "conclusion maps_identical: " << (v.conclusion_identical ? "true" : "false")
          << "\n";
  ctx.out << "verdict: " << classification_name(v.classification);
  if (v.classification == Classification::HypothesisFailed) {
    ctx.out << "(";
    for (size_t k = 0; k < v.failed.size(); ++k) {
      if (k) ctx.out << ", ";
      ctx.out << v.failed[k];
    }
    ctx.out << ")";
  }
  ctx.out << "\n";
  if (!v.sampler_note.empty()) ctx.out << "sampler: " << v.sampler_note << "\n";
  for (const auto& [name, rep] : v.fmt_reports)
    ctx.out << "fmt " << name << ": C_fit = " << format_double(rep.c_fit) << "\n";
  if (v.smt_report)
    ctx.out << "smt probe holds at "
            << format_double(100.0 * v.smt_report->fraction_holding) << "% of radii\n";
  if (v.divisor_report) {
    ctx.out << "divisor diagnostics: pointwise bound "
            << (v.divisor_report->pointwise_bound_ok ? "holds" : "VIOLATED")
            << ", nu_S >= p " << (v.divisor_report->s_order_ok ? "holds" : "VIOLATED")
            << " over " << v.divisor_report->rows.size() << " point(s)\n";
  }
  for (const auto& t : v.traces) {
    std::vector<std::array<double, 4>> csv;
    for (const auto& row : t.rows)
      csv.push_back({row.r, row.lhs, row.rhs, row.rhs - row.lhs});
    write_csv(ctx.opts, t.name, csv);
  }
  if (v.smt_report) {
    std::vector<std::array<double, 4>> csv;
    for (const auto& row : v.smt_report->rows)
      csv.push_back({row.r, row.lhs, row.rhs, row.slack});
    write_csv(ctx.opts, "smt", csv);
  }

  Json& m = ctx.machine;
  m["command"] = "uniqueness";
  m["hypotheses"] = jh;
  m["threshold"] = threshold_json(v.threshold);
  m["conclusion_identical"] = v.conclusion_identical;
  m["verdict"] = classification_name(v.classification);
  m["failed"] = v.failed;
  m["sampler"] = v.sampler_note;
  if (v.divisor_report) {
    m["divisor_pointwise_ok"] = v.divisor_report->pointwise_bound_ok;
    m["divisor_s_order_ok"] = v.divisor_report->s_order_ok;
  }
  if (v.smt_report) m["smt_fraction"] = v.smt_report->fraction_holding;
  if (v.classification != Classification::ConsistentWithTheorem) ctx.exit_code = 1;
}

} // namespace

int run_command(const std::string& name, const InstanceDocument& doc,
                const RunOptions& opts, std::ostream& out) {
  CommandContext ctx{doc, opts, out, Json::object(), 0};
  try {
    if (name == "constants")
      cmd_constants(ctx);
    else if (name == "resultant")
      cmd_resultant(ctx);
    else if (name == "certificate")
      cmd_certificate(ctx);
    else if (name == "admissible")
      cmd_admissible(ctx);
    else if (name == "counting")
      cmd_counting(ctx);
    else if (name == "characteristic")
      cmd_characteristic(ctx);
    else if (name == "fmt-check")
      cmd_fmt_check(ctx);
    else if (name == "smt-probe")
      cmd_smt_probe(ctx);
    else if (name == "sample-hyperplanes")
      cmd_sample_hyperplanes(ctx);
    else if (name == "uniqueness")
      cmd_uniqueness(ctx);
    else
      throw Error(ErrorKind::InvalidInput, "unknown subcommand '" + name + "'");
  } catch (const Error& e) {
    out << "error [" << error_kind_name(e.kind()) << "]: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::AmbiguousRadius:
      case ErrorKind::ZeroResolutionFailure:
      case ErrorKind::PrecisionExhausted:
      case ErrorKind::SamplerExhausted:
        return 3;
      default:
        return 2;
    }
  }
  ctx.finish();
  return ctx.exit_code;
}

} // namespace mhlab
