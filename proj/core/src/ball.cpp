#include "mhlab/ball.hpp"

#include <cmath>
#include <cstdio>

#include "mhlab/error.hpp"

namespace mhlab {

namespace {

prec_t join_prec(const RBall& a, const RBall& b) {
  return std::max(a.prec(), b.prec());
}

// Upper bound for the rounding error of an RNDN operation that produced v:
// one ulp of v (half an ulp would do, a full ulp is convenient and safe).
void add_ulp(Real& rad, mpfr_srcptr v) {
  if (mpfr_zero_p(v)) return;
  mpfr_exp_t e = mpfr_get_exp(v);
  mpfr_t ulp;
  mpfr_init2(ulp, 16);
  mpfr_set_ui_2exp(ulp, 1, e - mpfr_get_prec(v), MPFR_RNDU);
  mpfr_add(rad.get(), rad.get(), ulp, MPFR_RNDU);
  mpfr_clear(ulp);
}

Real abs_up(const Real& v) {
  Real out(kRadiusPrec);
  mpfr_abs(out.get(), v.get(), MPFR_RNDU);
  return out;
}

// |mid| - rad rounded down; clamped at 0 when negative.
Real mag_lower(const RBall& a) {
  Real out(kRadiusPrec);
  mpfr_abs(out.get(), a.mid.get(), MPFR_RNDD);
  mpfr_sub(out.get(), out.get(), a.rad.get(), MPFR_RNDD);
  return out;
}

} // namespace

Real Real::from_long(long v, prec_t prec) {
  Real out(prec);
  mpfr_set_si(out.get(), v, MPFR_RNDN);
  return out;
}

Real Real::from_double(double v, prec_t prec) {
  Real out(prec);
  mpfr_set_d(out.get(), v, MPFR_RNDN);
  return out;
}

Real Real::from_rat(const Rat& q, prec_t prec) {
  Real out(prec);
  mpfr_set_q(out.get(), q.get_mpq_t(), MPFR_RNDN);
  return out;
}

RBall RBall::exact_long(long v, prec_t prec) {
  RBall out(prec);
  mpfr_set_si(out.mid.get(), v, MPFR_RNDN); // exact for any reasonable prec
  return out;
}

RBall RBall::from_rat(const Rat& q, prec_t prec) {
  RBall out(prec);
  mpfr_set_q(out.mid.get(), q.get_mpq_t(), MPFR_RNDN);
  add_ulp(out.rad, out.mid.get());
  return out;
}

RBall RBall::from_double(double v, prec_t prec) {
  RBall out(prec);
  mpfr_set_d(out.mid.get(), v, MPFR_RNDN); // exact: double fits 128 bits
  return out;
}

RBall RBall::from_midrad(double mid, double rad, prec_t prec) {
  RBall out(prec);
  mpfr_set_d(out.mid.get(), mid, MPFR_RNDN);
  mpfr_set_d(out.rad.get(), rad, MPFR_RNDU);
  return out;
}

bool RBall::contains_zero() const {
  Real a = abs_up(mid);
  return mpfr_cmp(a.get(), rad.get()) <= 0;
}

bool RBall::is_positive() const {
  if (mid.sign() <= 0) return false;
  Real lo(kRadiusPrec);
  mpfr_sub(lo.get(), mid.get(), rad.get(), MPFR_RNDD);
  return mpfr_sgn(lo.get()) > 0;
}

bool RBall::is_negative() const {
  if (mid.sign() >= 0) return false;
  Real hi(kRadiusPrec);
  mpfr_add(hi.get(), mid.get(), rad.get(), MPFR_RNDU);
  return mpfr_sgn(hi.get()) < 0;
}

double RBall::lower() const {
  Real lo(64);
  mpfr_sub(lo.get(), mid.get(), rad.get(), MPFR_RNDD);
  return mpfr_get_d(lo.get(), MPFR_RNDD);
}

double RBall::upper() const {
  Real hi(64);
  mpfr_add(hi.get(), mid.get(), rad.get(), MPFR_RNDU);
  return mpfr_get_d(hi.get(), MPFR_RNDU);
}

double RBall::rad_double() const { return mpfr_get_d(rad.get(), MPFR_RNDU); }

RBall operator+(const RBall& a, const RBall& b) {
  RBall out(join_prec(a, b));
  mpfr_add(out.mid.get(), a.mid.get(), b.mid.get(), MPFR_RNDN);
  mpfr_add(out.rad.get(), a.rad.get(), b.rad.get(), MPFR_RNDU);
  add_ulp(out.rad, out.mid.get());
  return out;
}

RBall operator-(const RBall& a, const RBall& b) {
  RBall out(join_prec(a, b));
  mpfr_sub(out.mid.get(), a.mid.get(), b.mid.get(), MPFR_RNDN);
  mpfr_add(out.rad.get(), a.rad.get(), b.rad.get(), MPFR_RNDU);
  add_ulp(out.rad, out.mid.get());
  return out;
}

RBall operator-(const RBall& a) {
  RBall out = a;
  mpfr_neg(out.mid.get(), out.mid.get(), MPFR_RNDN);
  return out;
}

RBall operator*(const RBall& a, const RBall& b) {
  RBall out(join_prec(a, b));
  mpfr_mul(out.mid.get(), a.mid.get(), b.mid.get(), MPFR_RNDN);
  // rad = |a|rb + |b|ra + ra rb
  Real am = abs_up(a.mid), bm = abs_up(b.mid);
  Real t(kRadiusPrec);
  mpfr_mul(t.get(), am.get(), b.rad.get(), MPFR_RNDU);
  mpfr_set(out.rad.get(), t.get(), MPFR_RNDU);
  mpfr_mul(t.get(), bm.get(), a.rad.get(), MPFR_RNDU);
  mpfr_add(out.rad.get(), out.rad.get(), t.get(), MPFR_RNDU);
  mpfr_mul(t.get(), a.rad.get(), b.rad.get(), MPFR_RNDU);
  mpfr_add(out.rad.get(), out.rad.get(), t.get(), MPFR_RNDU);
  add_ulp(out.rad, out.mid.get());
  return out;
}

RBall operator/(const RBall& a, const RBall& b) {
  Real blo = mag_lower(b);
  if (mpfr_sgn(blo.get()) <= 0)
    throw Error(ErrorKind::Internal, "ball division by interval containing zero");
  RBall out(join_prec(a, b));
  mpfr_div(out.mid.get(), a.mid.get(), b.mid.get(), MPFR_RNDN);
  // |a/b - amid/bmid| <= (ra + |q| rb) / (|bmid| - rb)
  Real qa = abs_up(out.mid);
  Real t(kRadiusPrec);
  mpfr_mul(t.get(), qa.get(), b.rad.get(), MPFR_RNDU);
  mpfr_add(t.get(), t.get(), a.rad.get(), MPFR_RNDU);
  mpfr_div(out.rad.get(), t.get(), blo.get(), MPFR_RNDU);
  add_ulp(out.rad, out.mid.get());
  return out;
}

RBall abs_ball(const RBall& a) {
  RBall out = a;
  mpfr_abs(out.mid.get(), out.mid.get(), MPFR_RNDN);
  if (out.contains_zero()) {
    // fold the interval at 0: [0, |mid|+rad]
    Real hi(kRadiusPrec);
    mpfr_abs(hi.get(), a.mid.get(), MPFR_RNDU);
    mpfr_add(hi.get(), hi.get(), a.rad.get(), MPFR_RNDU);
    mpfr_div_ui(out.mid.get(), hi.get(), 2, MPFR_RNDN);
    mpfr_div_ui(out.rad.get(), hi.get(), 2, MPFR_RNDU);
    add_ulp(out.rad, out.mid.get());
  }
  return out;
}

RBall sqrt_ball(const RBall& a) {
  Real lo = mag_lower(a);
  RBall out(a.prec());
  if (a.mid.sign() < 0 || a.is_negative())
    throw Error(ErrorKind::Internal, "sqrt of negative interval");
  mpfr_sqrt(out.mid.get(), a.mid.get(), MPFR_RNDN);
  // sqrt is 1/2-Hoelder; use endpoint images for a safe radius.
  Real hi(kRadiusPrec), shi(kRadiusPrec), slo(kRadiusPrec);
  mpfr_add(hi.get(), a.mid.get(), a.rad.get(), MPFR_RNDU);
  mpfr_sqrt(shi.get(), hi.get(), MPFR_RNDU);
  if (mpfr_sgn(lo.get()) < 0) mpfr_set_zero(lo.get(), 1);
  mpfr_sqrt(slo.get(), lo.get(), MPFR_RNDD);
  mpfr_sub(out.rad.get(), shi.get(), slo.get(), MPFR_RNDU);
  add_ulp(out.rad, out.mid.get());
  return out;
}

RBall log_ball(const RBall& a) {
  Real lo = mag_lower(a);
  if (mpfr_sgn(lo.get()) <= 0 || a.mid.sign() <= 0)
    throw Error(ErrorKind::Internal, "log of interval not certified positive");
  RBall out(a.prec());
  mpfr_log(out.mid.get(), a.mid.get(), MPFR_RNDN);
  // Lipschitz constant 1/lo on the interval.
  mpfr_div(out.rad.get(), a.rad.get(), lo.get(), MPFR_RNDU);
  add_ulp(out.rad, out.mid.get());
  return out;
}

RBall exp_ball(const RBall& a) {
  RBall out(a.prec());
  mpfr_exp(out.mid.get(), a.mid.get(), MPFR_RNDN);
  // |e^x - e^m| <= e^m (e^r - 1) for |x-m| <= r
  Real up(kRadiusPrec), em(kRadiusPrec);
  mpfr_expm1(up.get(), a.rad.get(), MPFR_RNDU);
  mpfr_exp(em.get(), a.mid.get(), MPFR_RNDU);
  mpfr_mul(out.rad.get(), em.get(), up.get(), MPFR_RNDU);
  add_ulp(out.rad, out.mid.get());
  return out;
}

RBall sin_ball(const RBall& a) {
  RBall out(a.prec());
  mpfr_sin(out.mid.get(), a.mid.get(), MPFR_RNDN);
  mpfr_set(out.rad.get(), a.rad.get(), MPFR_RNDU);
  add_ulp(out.rad, out.mid.get());
  return out;
}

RBall cos_ball(const RBall& a) {
  RBall out(a.prec());
  mpfr_cos(out.mid.get(), a.mid.get(), MPFR_RNDN);
  mpfr_set(out.rad.get(), a.rad.get(), MPFR_RNDU);
  add_ulp(out.rad, out.mid.get());
  return out;
}

RBall pow_ui_ball(const RBall& a, unsigned long e) {
  RBall out = RBall::exact_long(1, a.prec());
  RBall base = a;
  while (e > 0) {
    if (e & 1) out = out * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return out;
}

RBall widen(const RBall& a, double extra_rad) {
  RBall out = a;
  Real x(kRadiusPrec);
  mpfr_set_d(x.get(), extra_rad, MPFR_RNDU);
  mpfr_add(out.rad.get(), out.rad.get(), x.get(), MPFR_RNDU);
  return out;
}

RBall log10_int(const Int& v, prec_t prec) {
  RBall x(prec);
  mpfr_set_z(x.mid.get(), v.get_mpz_t(), MPFR_RNDN);
  add_ulp(x.rad, x.mid.get());
  RBall ln = log_ball(x);
  RBall ten = RBall::exact_long(10, prec);
  return ln / log_ball(ten);
}

RBall log_int(const Int& v, prec_t prec) {
  RBall x(prec);
  mpfr_set_z(x.mid.get(), v.get_mpz_t(), MPFR_RNDN);
  add_ulp(x.rad, x.mid.get());
  return log_ball(x);
}

std::optional<Int> floor_if_unambiguous(const RBall& a) {
  Real lo(a.prec()), hi(a.prec());
  mpfr_sub(lo.get(), a.mid.get(), a.rad.get(), MPFR_RNDD);
  mpfr_add(hi.get(), a.mid.get(), a.rad.get(), MPFR_RNDU);
  mpfr_floor(lo.get(), lo.get());
  mpfr_floor(hi.get(), hi.get());
  if (mpfr_cmp(lo.get(), hi.get()) != 0) return std::nullopt;
  Int out;
  mpfr_get_z(out.get_mpz_t(), lo.get(), MPFR_RNDN);
  return out;
}

CBall CBall::from_gauss(const GaussQ& a, prec_t prec) {
  return CBall(RBall::from_rat(a.re, prec), RBall::from_rat(a.im, prec));
}

CBall CBall::exact_long(long r, long i, prec_t prec) {
  return CBall(RBall::exact_long(r, prec), RBall::exact_long(i, prec));
}

CBall CBall::from_doubles(double r, double i, prec_t prec) {
  return CBall(RBall::from_double(r, prec), RBall::from_double(i, prec));
}

CBall CBall::from_midrad(double r, double i, double rad, prec_t prec) {
  return CBall(RBall::from_midrad(r, rad, prec), RBall::from_midrad(i, rad, prec));
}

double CBall::total_rad() const {
  double rr = re.rad_double(), ri = im.rad_double();
  return std::hypot(rr, ri) * (1.0 + 1e-14) + 1e-300;
}

CBall operator+(const CBall& a, const CBall& b) { return CBall(a.re + b.re, a.im + b.im); }
CBall operator-(const CBall& a, const CBall& b) { return CBall(a.re - b.re, a.im - b.im); }
CBall operator-(const CBall& a) { return CBall(-a.re, -a.im); }

CBall operator*(const CBall& a, const CBall& b) {
  return CBall(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}

CBall operator/(const CBall& a, const CBall& b) {
  RBall d = modulus_sq(b);
  CBall num = a * conj(b);
  return CBall(num.re / d, num.im / d);
}

CBall conj(const CBall& a) { return CBall(a.re, -a.im); }

CBall exp_ball(const CBall& a) {
  RBall ex = exp_ball(a.re);
  return CBall(ex * cos_ball(a.im), ex * sin_ball(a.im));
}

CBall pow_ui_ball(const CBall& a, unsigned long e) {
  CBall out = CBall::exact_long(1, 0, a.prec());
  CBall base = a;
  while (e > 0) {
    if (e & 1) out = out * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return out;
}

RBall modulus_sq(const CBall& a) { return a.re * a.re + a.im * a.im; }

RBall modulus(const CBall& a) { return sqrt_ball(modulus_sq(a)); }

CBall widen(const CBall& a, double extra_rad) {
  return CBall(widen(a.re, extra_rad), widen(a.im, extra_rad));
}

DBall DBall::from_doubles(double r, double i, prec_t prec) {
  DBall out(prec);
  mpfr_set_d(out.re.get(), r, MPFR_RNDN);
  mpfr_set_d(out.im.get(), i, MPFR_RNDN);
  return out;
}

DBall DBall::from_midrad(double r, double i, double rad, prec_t prec) {
  DBall out = from_doubles(r, i, prec);
  mpfr_set_d(out.rad.get(), rad, MPFR_RNDU);
  return out;
}

DBall DBall::from_gauss(const GaussQ& a, prec_t prec) {
  DBall out(prec);
  mpfr_set_q(out.re.get(), a.re.get_mpq_t(), MPFR_RNDN);
  mpfr_set_q(out.im.get(), a.im.get_mpq_t(), MPFR_RNDN);
  add_ulp(out.rad, out.re.get());
  add_ulp(out.rad, out.im.get());
  return out;
}

bool DBall::contains_zero() const {
  Real m(kRadiusPrec);
  mpfr_hypot(m.get(), re.get(), im.get(), MPFR_RNDD);
  return mpfr_cmp(m.get(), rad.get()) <= 0;
}

double DBall::rad_double() const { return mpfr_get_d(rad.get(), MPFR_RNDU); }

CBall DBall::to_cball() const {
  CBall out(prec());
  out.re.mid = re;
  out.im.mid = im;
  mpfr_set(out.re.rad.get(), rad.get(), MPFR_RNDU);
  mpfr_set(out.im.rad.get(), rad.get(), MPFR_RNDU);
  return out;
}

DBall operator+(const DBall& a, const DBall& b) {
  DBall out(std::max(a.prec(), b.prec()));
  mpfr_add(out.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(out.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(out.rad.get(), a.rad.get(), b.rad.get(), MPFR_RNDU);
  add_ulp(out.rad, out.re.get());
  add_ulp(out.rad, out.im.get());
  return out;
}

DBall operator-(const DBall& a, const DBall& b) {
  DBall out(std::max(a.prec(), b.prec()));
  mpfr_sub(out.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_sub(out.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(out.rad.get(), a.rad.get(), b.rad.get(), MPFR_RNDU);
  add_ulp(out.rad, out.re.get());
  add_ulp(out.rad, out.im.get());
  return out;
}

DBall operator-(const DBall& a) {
  DBall out = a;
  mpfr_neg(out.re.get(), out.re.get(), MPFR_RNDN);
  mpfr_neg(out.im.get(), out.im.get(), MPFR_RNDN);
  return out;
}

DBall operator*(const DBall& a, const DBall& b) {
  DBall out(std::max(a.prec(), b.prec()));
  // center = a.mid * b.mid
  Real t1(out.prec()), t2(out.prec());
  mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_sub(out.re.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(out.im.get(), t1.get(), t2.get(), MPFR_RNDN);
  // rad = |a| rb + |b| ra + ra rb (+ center rounding)
  Real ma(kRadiusPrec), mb(kRadiusPrec), t(kRadiusPrec);
  mpfr_hypot(ma.get(), a.re.get(), a.im.get(), MPFR_RNDU);
  mpfr_hypot(mb.get(), b.re.get(), b.im.get(), MPFR_RNDU);
  mpfr_mul(t.get(), ma.get(), b.rad.get(), MPFR_RNDU);
  mpfr_set(out.rad.get(), t.get(), MPFR_RNDU);
  mpfr_mul(t.get(), mb.get(), a.rad.get(), MPFR_RNDU);
  mpfr_add(out.rad.get(), out.rad.get(), t.get(), MPFR_RNDU);
  mpfr_mul(t.get(), a.rad.get(), b.rad.get(), MPFR_RNDU);
  mpfr_add(out.rad.get(), out.rad.get(), t.get(), MPFR_RNDU);
  // two ulps cover the four center roundings conservatively
  add_ulp(out.rad, out.re.get());
  add_ulp(out.rad, out.re.get());
  add_ulp(out.rad, out.im.get());
  add_ulp(out.rad, out.im.get());
  return out;
}

DBall exp_ball(const DBall& a) {
  DBall out(a.prec());
  Real ex(a.prec()), c(a.prec()), s(a.prec());
  mpfr_exp(ex.get(), a.re.get(), MPFR_RNDN);
  mpfr_sin_cos(s.get(), c.get(), a.im.get(), MPFR_RNDN);
  mpfr_mul(out.re.get(), ex.get(), c.get(), MPFR_RNDN);
  mpfr_mul(out.im.get(), ex.get(), s.get(), MPFR_RNDN);
  // |e^z - e^c| <= |e^c| (e^rad - 1) over the disk
  Real mag(kRadiusPrec), grow(kRadiusPrec);
  mpfr_abs(mag.get(), ex.get(), MPFR_RNDU);
  mpfr_expm1(grow.get(), a.rad.get(), MPFR_RNDU);
  mpfr_mul(out.rad.get(), mag.get(), grow.get(), MPFR_RNDU);
  add_ulp(out.rad, out.re.get());
  add_ulp(out.rad, out.re.get());
  add_ulp(out.rad, out.im.get());
  add_ulp(out.rad, out.im.get());
  return out;
}

RBall modulus(const DBall& a) {
  RBall out(a.prec());
  mpfr_hypot(out.mid.get(), a.re.get(), a.im.get(), MPFR_RNDN);
  mpfr_set(out.rad.get(), a.rad.get(), MPFR_RNDU);
  add_ulp(out.rad, out.mid.get());
  return out;
}

void inflate(DBall& a, const Real& extra) {
  mpfr_add(a.rad.get(), a.rad.get(), extra.get(), MPFR_RNDU);
}

std::optional<ArgCone> arg_enclosure(const DBall& a) {
  Real clow(kRadiusPrec);
  mpfr_hypot(clow.get(), a.re.get(), a.im.get(), MPFR_RNDD);
  Real gap(kRadiusPrec);
  mpfr_sub(gap.get(), clow.get(), a.rad.get(), MPFR_RNDD);
  if (mpfr_sgn(gap.get()) <= 0) return std::nullopt;
  Real ratio(kRadiusPrec);
  mpfr_div(ratio.get(), a.rad.get(), clow.get(), MPFR_RNDU);
  double rt = mpfr_get_d(ratio.get(), MPFR_RNDU);
  if (!(rt < 0.7)) return std::nullopt;
  Real ang(64);
  mpfr_atan2(ang.get(), a.im.get(), a.re.get(), MPFR_RNDN);
  double mid_angle = mpfr_get_d(ang.get(), MPFR_RNDN);
  double hw = std::asin(rt) * (1.0 + 1e-12) + 1e-12;
  return ArgCone{mid_angle, hw};
}

std::optional<ArgCone> arg_enclosure(const CBall& a) {
  // Disk covering the ball: center midpoint, radius hypot of component radii.
  Real r(kRadiusPrec), t(kRadiusPrec);
  mpfr_hypot(r.get(), a.re.rad.get(), a.im.rad.get(), MPFR_RNDU);
  Real clow(kRadiusPrec);
  mpfr_hypot(clow.get(), a.re.mid.get(), a.im.mid.get(), MPFR_RNDD);
  mpfr_sub(clow.get(), clow.get(), r.get(), MPFR_RNDD);
  if (mpfr_sgn(clow.get()) <= 0) return std::nullopt;
  // ratio = r / |c| (upper bound)
  mpfr_hypot(t.get(), a.re.mid.get(), a.im.mid.get(), MPFR_RNDD);
  Real ratio(kRadiusPrec);
  mpfr_div(ratio.get(), r.get(), t.get(), MPFR_RNDU);
  double rt = mpfr_get_d(ratio.get(), MPFR_RNDU);
  if (!(rt < 0.7)) return std::nullopt; // keep cones narrow
  Real ang(64);
  mpfr_atan2(ang.get(), a.im.mid.get(), a.re.mid.get(), MPFR_RNDN);
  double mid_angle = mpfr_get_d(ang.get(), MPFR_RNDN);
  double hw = std::asin(rt) * (1.0 + 1e-12) + 1e-12;
  return ArgCone{mid_angle, hw};
}

std::string to_string(const RBall& a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", a.to_double());
  std::string out(buf);
  std::snprintf(buf, sizeof buf, "%.3g", a.rad_double());
  out += " +/- ";
  out += buf;
  return out;
}

std::string to_string(const CBall& a) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%.12g%+.12gi (+/- %.3g)", a.real_mid(),
                a.imag_mid(), a.total_rad());
  return buf;
}

} // namespace mhlab
