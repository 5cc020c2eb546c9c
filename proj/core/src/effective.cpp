#include "mhlab/effective.hpp"

#include <algorithm>
#include <functional>

#include "mhlab/error.hpp"
#include "mhlab/multiindex.hpp"

namespace mhlab {

DegreeStats degree_stats(std::span<const int> degrees) {
  if (degrees.empty())
    throw Error(ErrorKind::InvalidInput, "degree statistics of an empty list");
  DegreeStats out{1, degrees[0], degrees[0]};
  for (int d : degrees) {
    if (d < 1)
      throw Error(ErrorKind::InvalidInput, "target degrees must be >= 1");
    Int dd(d);
    mpz_lcm(out.lcm_degree.get_mpz_t(), out.lcm_degree.get_mpz_t(), dd.get_mpz_t());
    out.max_degree = std::max(out.max_degree, dd);
    out.min_degree = std::min(out.min_degree, dd);
  }
  return out;
}

Int degree_bound_N(int n, const Int& d) {
  if (n < 1 || d < 1)
    throw Error(ErrorKind::InvalidInput, "degree bound needs n >= 1, d >= 1");
  Int two_n = Int(1) << n;
  return d * (4 * (n + 1) * (two_n - 1) * (n * d + 1) + n + 1);
}

long decimal_digits(const Int& v) {
  if (v < 1)
    throw Error(ErrorKind::InvalidInput, "digit count of a non-positive integer");
  size_t est = mpz_sizeinbase(v.get_mpz_t(), 10); // may overestimate by one
  Int p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, est - 1);
  return v >= p10 ? static_cast<long>(est) : static_cast<long>(est) - 1;
}

namespace {

const long kMaterializeBitCap = 1L << 24;

std::optional<long> power_of_ten(const Int& base) {
  long k = decimal_digits(base) - 1;
  Int p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(k));
  if (base == p10) return k;
  return std::nullopt;
}

// floor of an interval-evaluated expression, at escalating precision.
Int interval_floor(const std::function<RBall(prec_t)>& eval, prec_t prec_cap) {
  for (prec_t p = 128; p <= prec_cap; p *= 2) {
    auto f = floor_if_unambiguous(eval(p));
    if (f) return *f;
  }
  throw Error(ErrorKind::PrecisionExhausted,
              "floor undecided below the precision cap");
}

// exact decimal digit count of base^exponent
long power_digits(const Int& base, const Int& exponent, prec_t prec_cap) {
  if (auto k = power_of_ten(base))
    return static_cast<long>(mpz_get_ui(Int(exponent * *k).get_mpz_t())) + 1;
  Int f = interval_floor(
      [&](prec_t p) {
        return RBall::from_rat(Rat(exponent), p) * log10_int(base, p);
      },
      prec_cap);
  return f.get_si() + 1;
}

} // namespace

FieldConstant field_constant_t(int n, int q, const Int& N, bool fixed_targets,
                               prec_t prec_cap) {
  FieldConstant t;
  if (fixed_targets) {
    t.fixed = true;
    t.exact = Int(1);
    return t;
  }
  if (q < n + 1)
    throw Error(ErrorKind::InvalidInput, "field constant needs q >= n+1");
  t.fixed = false;
  Int C = binomial(mpz_get_ui(Int(N + n).get_mpz_t()), static_cast<unsigned long>(n));
  Int B = C * C * binomial(static_cast<unsigned long>(q), static_cast<unsigned long>(n));
  // F = [ (B-1) log(B) / log(1 + 1/(4 C N)) + 1 ]
  Rat eps(1);
  eps /= Rat(4 * C * N);
  t.bracket = interval_floor(
      [&](prec_t p) {
        RBall num = RBall::from_rat(Rat(B - 1), p) * log_int(B, p);
        RBall den = log_ball(RBall::from_rat(1 + eps, p));
        return num / den + RBall::exact_long(1, p);
      },
      prec_cap);
  t.base = B + t.bracket * t.bracket;
  t.exponent = B - 1;
  t.digits = power_digits(t.base, t.exponent, prec_cap);
  // materialize when the exact integer is of manageable size
  double bits = mpz_sizeinbase(t.base.get_mpz_t(), 2) *
                mpz_get_d(t.exponent.get_mpz_t());
  if (bits < static_cast<double>(kMaterializeBitCap) &&
      mpz_fits_ulong_p(t.exponent.get_mpz_t())) {
    Int v;
    mpz_pow_ui(v.get_mpz_t(), t.base.get_mpz_t(), mpz_get_ui(t.exponent.get_mpz_t()));
    t.exact = v;
  }
  return t;
}

EffectiveConstants effective_constants(int n, int q, std::span<const int> degrees,
                                       bool fixed_targets) {
  if (static_cast<int>(degrees.size()) != q)
    throw Error(ErrorKind::InvalidInput, "need one degree per target");
  EffectiveConstants out;
  out.n = n;
  out.q = q;
  out.fixed_targets = fixed_targets;
  out.degrees = degree_stats(degrees);
  out.N = degree_bound_N(n, out.degrees.lcm_degree);
  out.binom_C = binomial(mpz_get_ui(Int(out.N + n).get_mpz_t()),
                         static_cast<unsigned long>(n));
  out.t = field_constant_t(n, q, out.N, fixed_targets);
  const Int& ds = out.degrees.max_degree;
  const Int& d = out.degrees.lcm_degree;
  if (out.t.exact) {
    // L = floor((d* C t - d*) / d) + 1
    Int num = ds * out.binom_C * *out.t.exact - ds;
    Int L;
    mpz_fdiv_q(L.get_mpz_t(), num.get_mpz_t(), d.get_mpz_t());
    L += 1;
    out.L_exact = L;
    out.digits_L = decimal_digits(L);
  } else {
    // Digit count of the dominating product d* C base^e / d; the additive
    // -d* + d slack is 10^-thousands relative here and cannot move it.
    Int f = interval_floor(
        [&](prec_t p) {
          RBall scale = RBall::from_rat(Rat(ds * out.binom_C) / Rat(d), p);
          RBall log10_scale = log_ball(scale) / log_ball(RBall::exact_long(10, p));
          return log10_scale +
                 RBall::from_rat(Rat(out.t.exponent), p) * log10_int(out.t.base, p);
        },
        4096);
    out.digits_L = f.get_si() + 1;
  }
  return out;
}

Int truncation_level_L(int n, int q, std::span<const int> degrees,
                       bool fixed_targets) {
  EffectiveConstants c = effective_constants(n, q, degrees, fixed_targets);
  if (!c.L_exact)
    throw Error(ErrorKind::PrecisionExhausted,
                "truncation level too large to materialize at these parameters");
  return *c.L_exact;
}

ThresholdReport threshold_check(int n, int q, int p, std::span<const int> degrees,
                                char variant, bool fixed_targets) {
  if (p < 1)
    throw Error(ErrorKind::InvalidInput, "derivative level p must be >= 1");
  if (variant != 'a' && variant != 'b')
    throw Error(ErrorKind::InvalidInput, "variant must be 'a' or 'b'");
  if (q < n + 1)
    throw Error(ErrorKind::InvalidInput, "threshold needs q >= n+1");
  EffectiveConstants c = effective_constants(n, q, degrees, fixed_targets);
  ThresholdReport out;
  out.variant = variant;
  out.p = p;
  out.q = q;
  Int mult = (variant == 'a') ? Int(2 * n) : Int(2);
  if (c.L_exact) {
    Rat threshold = Rat(n) + Rat(mult * *c.L_exact) / Rat(Int(p) * c.degrees.min_degree) +
                    Rat(3, 2);
    out.threshold = threshold;
    out.satisfied = Rat(q) > threshold;
    out.threshold_digits = decimal_digits(Int(mult * *c.L_exact));
    return out;
  }
  // L has digits_L decimal digits; the threshold dominates q for any
  // representable q once digits are in the dozens.
  out.threshold_digits = c.digits_L;
  if (c.digits_L < 30)
    throw Error(ErrorKind::Internal,
                "unmaterialized truncation level with a small digit count");
  out.satisfied = false;
  return out;
}

std::string to_string(const Rat& value, int approx_digits) {
  std::string exact = value.get_str();
  mpf_class approx(value, 64);
  mp_exp_t exp10;
  std::string digits = approx.get_str(exp10, 10, approx_digits);
  if (digits.empty()) digits = "0";
  bool neg = digits[0] == '-';
  std::string mant = neg ? digits.substr(1) : digits;
  std::string formatted = (neg ? std::string("-") : std::string()) + "0." + mant +
                          "e" + std::to_string(exp10);
  return exact + " (~" + formatted + ")";
}

} // namespace mhlab
