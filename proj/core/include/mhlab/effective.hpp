#pragma once

#include <optional>
#include <span>
#include <string>

#include "mhlab/ball.hpp"
#include "mhlab/gauss.hpp"

namespace mhlab {

struct DegreeStats {
  Int lcm_degree;  // d
  Int max_degree;  // d*
  Int min_degree;  // d~
};

DegreeStats degree_stats(std::span<const int> degrees);

// N = d * (4(n+1)(2^n - 1)(nd + 1) + n + 1)
Int degree_bound_N(int n, const Int& d);

// The field constant t: 1 for fixed targets; for moving targets the exact
// power (B + F^2)^(B-1) with B = C(n+N,n)^2 C(q,n) and F the floored
// log-ratio bracket, decided by interval arithmetic at escalating precision.
struct FieldConstant {
  bool fixed = true;
  Int base = 1;      // t = base^exponent
  Int exponent = 1;
  Int bracket = 0;   // F, the floored inner bracket (moving targets)
  std::optional<Int> exact; // materialized when below the size cap
  long digits = 1;   // exact decimal digit count of t
};

FieldConstant field_constant_t(int n, int q, const Int& N, bool fixed_targets,
                               prec_t prec_cap = 4096);

struct EffectiveConstants {
  int n = 0;
  int q = 0;
  bool fixed_targets = true;
  DegreeStats degrees;
  Int N;
  Int binom_C; // C(n+N, n)
  FieldConstant t;
  std::optional<Int> L_exact; // materialized when t is
  long digits_L = 1;
};

EffectiveConstants effective_constants(int n, int q, std::span<const int> degrees,
                                       bool fixed_targets);

// Truncation level L = [ (d* C(n+N,n) t - d*) / d + 1 ]; requires a
// materialized t (always the case for fixed targets and desk-scale moving
// parameters).
Int truncation_level_L(int n, int q, std::span<const int> degrees,
                       bool fixed_targets);

struct ThresholdReport {
  char variant = 'a';
  int p = 1;
  int q = 0;
  std::optional<Rat> threshold; // exact when L is materialized
  long threshold_digits = 0;    // decimal size of the threshold otherwise
  bool satisfied = false;
};

// q > n + 2nL/(p d~) + 3/2 (variant a) or q > n + 2L/(p d~) + 3/2 (variant
// b), decided exactly; astronomically large L is compared through rigorous
// digit bounds.
ThresholdReport threshold_check(int n, int q, int p, std::span<const int> degrees,
                                char variant, bool fixed_targets);

long decimal_digits(const Int& v); // exact, v >= 1

std::string to_string(const Rat& threshold, int approx_digits);

} // namespace mhlab
