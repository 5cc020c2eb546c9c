#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mhlab/characteristic.hpp"
#include "mhlab/counting.hpp"
#include "mhlab/curve.hpp"
#include "mhlab/effective.hpp"
#include "mhlab/resultant.hpp"

namespace mhlab {

struct TargetSet {
  int n = 1;
  std::vector<std::string> names;
  std::vector<MovingHomPoly> targets;

  int q() const { return static_cast<int>(targets.size()); }
  std::vector<int> degrees() const;
};

// Union of the target preimages of f and g with per-point vanishing orders
// (index = target position; order 0 = target does not vanish there).
struct SharedPoint {
  CBall location;
  std::vector<int> f_orders;
  std::vector<int> g_orders;
};

struct SharedPreimageSet {
  bool exact = false;
  double disk_radius = 0.0; // infinity for the exact route
  std::vector<SharedPoint> points;
};

SharedPreimageSet shared_preimage_set(const Curve& f, const Curve& g,
                                      const TargetSet& ts, double R_max,
                                      prec_t prec = kDefaultPrec);

struct ConditionIFailure {
  int k = 0;
  int s = 0;
  CBall witness;
  int order_found = 0; // vanishing order of the ratio difference there
};

struct ConditionIReport {
  bool passed = false;
  int p = 1;
  bool exact_route = false;
  std::vector<ConditionIFailure> failures;
  std::vector<std::string> exclusions; // reported, never silent
};

// Derivative-matching hypothesis: D^a(f_k/f_s) = D^a(g_k/g_s) for |a| < p on
// the shared preimage set off Zero(f_s g_s).  Exact divisibility route for
// polynomial pairs, certified jets at located points otherwise.
ConditionIReport condition_i_check(const Curve& f, const Curve& g,
                                   const TargetSet& ts, int p, double R_max,
                                   prec_t prec = kDefaultPrec);

struct ConditionIIViolation {
  int i = 0;
  int j = 0;
  CBall witness;
};

struct ConditionIIReport {
  bool passed = false;
  std::vector<ConditionIIViolation> violations;
};

// Pairwise disjointness of the f-preimages (the m = 1 reading of the
// dimension condition).
ConditionIIReport condition_ii_check(const Curve& f, const TargetSet& ts,
                                     double R_max, prec_t prec = kDefaultPrec);

// Projective identity f == g via cross products f_i g_j - f_j g_i == 0.
bool maps_identical(const Curve& f, const Curve& g);

struct HyperplanePair {
  std::vector<GaussQ> h1;
  std::vector<GaussQ> h2;
  // S = H1(f)/H2(f) - H1(g)/H2(g) as numerator / denominator; at shared
  // points the denominator is nonzero, so nu_S is the numerator's order.
  ExpPolySum S_num;
  ExpPolySum S_den;
  int attempts_used = 0;
};

// Random constant hyperplanes H1, H2 with: H_i(f), H_i(g) nonzero, their
// zero sets off the shared preimage set, and S nonzero.  Deterministic for a
// fixed seed; throws SamplerExhausted past the retry budget.
HyperplanePair hyperplane_pair_sampler(const Curve& f, const Curve& g,
                                       const TargetSet& ts, std::uint64_t seed,
                                       double R_max, prec_t prec = kDefaultPrec,
                                       int budget = 256);
// Independent recheck of the sampler postconditions.
bool verify_hyperplane_pair(const HyperplanePair& pair, const Curve& f,
                            const Curve& g, const TargetSet& ts, double R_max,
                            prec_t prec = kDefaultPrec);

struct DivisorInequalityRow {
  CBall location;
  int lhs = 0;            // sum_j min(1, ord Q_j(f))
  int rhs = 0;            // n*min(1, sum ord) + (q-n)*min(1, sum ord R_J)
  int nu_S = 0;
  bool s_condition_ok = true; // nu_S >= p checked (point not excluded)
  bool excluded = false;
  std::string exclusion_reason;
};

struct DivisorInequalityReport {
  bool pointwise_bound_ok = false; // lhs <= rhs everywhere
  bool s_order_ok = false;         // nu_S >= p off the excluded sets
  int p = 1;
  std::vector<DivisorInequalityRow> rows;
};

// Pointwise divisor diagnostics from the proof: nu_S >= p on the shared set
// (off Zero(f_s g_s) and the H2 preimages) and the resultant-based bound on
// sum_j min(1, nu_{Q_j of f}).  Exact curve models only.
DivisorInequalityReport divisor_inequality_check(const Curve& f, const Curve& g,
                                                 const TargetSet& ts, int p,
                                                 const HyperplanePair& pair);

struct SmtProbeRow {
  double r;
  double lhs;   // (q - n - 3/2) T_f(r)
  double rhs;   // sum_j N^(L)(r, Q_j) / d_j
  double slack; // rhs - lhs
};

struct SmtProbeReport {
  std::vector<SmtProbeRow> rows;
  double fraction_holding = 0.0;
  std::string caveat;
};

// Second Main Theorem inequality sampled on a radius grid; finitely many
// failing radii are compatible with the exceptional Borel set.
SmtProbeReport smt_inequality_probe(const Curve& f, const TargetSet& ts,
                                    const Truncation& L, const RadiusGrid& grid,
                                    prec_t prec = kDefaultPrec);

enum class Classification {
  ConsistentWithTheorem,
  HypothesisFailed,
  TheoremViolation,
};

const char* classification_name(Classification c);

struct HypothesisResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct TraceRow {
  double r, lhs, rhs;
};

struct NamedTrace {
  std::string name;
  std::string note;
  std::vector<TraceRow> rows;
};

struct ExperimentOptions {
  int p = 1;
  char variant = 'a';
  bool fixed_targets = true;
  double R_max = 6.0;
  std::uint64_t seed = 1;
  prec_t prec = kDefaultPrec;
  int nondeg_degree_max = 3;
  int nondeg_deg_z_max = 2;
  std::optional<RadiusGrid> grid; // derived from the models when absent
  bool diagnostics = true;
};

struct ExperimentVerdict {
  std::vector<HypothesisResult> hypotheses;
  ThresholdReport threshold;
  bool conclusion_identical = false;
  Classification classification = Classification::HypothesisFailed;
  std::vector<std::string> failed; // hypothesis names, "threshold" included
  // diagnostics
  std::vector<NamedTrace> traces;
  std::optional<DivisorInequalityReport> divisor_report;
  std::optional<SmtProbeReport> smt_report;
  std::vector<std::pair<std::string, FmtProbeReport>> fmt_reports;
  std::string sampler_note;
};

// THEOREM_VIOLATION only when every hypothesis and the threshold hold while
// the maps differ; a holding conclusion is always consistent.
Classification classify_verdict(std::span<const HypothesisResult> hypotheses,
                                bool threshold_satisfied, bool conclusion_identical);

ExperimentVerdict uniqueness_experiment(const Curve& f, const Curve& g,
                                        const TargetSet& ts,
                                        const ExperimentOptions& opts);

} // namespace mhlab
