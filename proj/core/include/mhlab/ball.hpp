#pragma once

#include <mpfr.h>

#include <optional>
#include <string>

#include "mhlab/gauss.hpp"

namespace mhlab {

using prec_t = mpfr_prec_t;
inline constexpr prec_t kDefaultPrec = 128;
inline constexpr prec_t kRadiusPrec = 64;

// Value-semantic wrapper around mpfr_t.
class Real {
public:
  explicit Real(prec_t prec = kDefaultPrec) {
    mpfr_init2(x_, prec);
    mpfr_set_zero(x_, 1);
  }
  Real(const Real& o) {
    mpfr_init2(x_, mpfr_get_prec(o.x_));
    mpfr_set(x_, o.x_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(x_, MPFR_PREC_MIN);
    mpfr_swap(x_, o.x_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(x_, mpfr_get_prec(o.x_));
      mpfr_set(x_, o.x_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(x_, o.x_);
    return *this;
  }
  ~Real() { mpfr_clear(x_); }

  mpfr_ptr get() { return x_; }
  mpfr_srcptr get() const { return x_; }
  prec_t prec() const { return mpfr_get_prec(x_); }
  double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(x_) != 0; }
  int sign() const { return mpfr_sgn(x_); }

  static Real from_long(long v, prec_t prec);
  static Real from_double(double v, prec_t prec);
  static Real from_rat(const Rat& q, prec_t prec); // rounded to nearest

private:
  mpfr_t x_;
};

// Closed interval [mid - rad, mid + rad]; rad is a nonnegative low-precision
// upper bound maintained with upward rounding.  All operations are inclusion
// isotonic, so evaluating an expression at a ball covering a region encloses
// the expression's range over that region.
struct RBall {
  Real mid;
  Real rad;

  explicit RBall(prec_t prec = kDefaultPrec) : mid(prec), rad(kRadiusPrec) {}

  static RBall exact_long(long v, prec_t prec);
  static RBall from_rat(const Rat& q, prec_t prec);
  static RBall from_double(double v, prec_t prec);
  static RBall from_midrad(double mid, double rad, prec_t prec);

  prec_t prec() const { return mid.prec(); }
  bool contains_zero() const;
  bool is_positive() const;     // certified > 0
  bool is_negative() const;     // certified < 0
  double lower() const;         // rounded down
  double upper() const;         // rounded up
  double to_double() const { return mid.to_double(); }
  double rad_double() const;
};

RBall operator+(const RBall& a, const RBall& b);
RBall operator-(const RBall& a, const RBall& b);
RBall operator-(const RBall& a);
RBall operator*(const RBall& a, const RBall& b);
RBall operator/(const RBall& a, const RBall& b); // requires b certified nonzero
RBall abs_ball(const RBall& a);
RBall sqrt_ball(const RBall& a);  // requires certified >= 0 (lower bound clamped at 0)
RBall log_ball(const RBall& a);   // requires certified > 0
RBall exp_ball(const RBall& a);
RBall sin_ball(const RBall& a);
RBall cos_ball(const RBall& a);
RBall pow_ui_ball(const RBall& a, unsigned long e);
RBall widen(const RBall& a, double extra_rad);

// log base 10 of an exact big integer, as a ball.
RBall log10_int(const Int& v, prec_t prec);
RBall log_int(const Int& v, prec_t prec);

// floor(x) when unambiguous across the whole interval.
std::optional<Int> floor_if_unambiguous(const RBall& a);

// Complex ball with per-component radii.
struct CBall {
  RBall re;
  RBall im;

  explicit CBall(prec_t prec = kDefaultPrec) : re(prec), im(prec) {}
  CBall(RBall r, RBall i) : re(std::move(r)), im(std::move(i)) {}

  static CBall from_gauss(const GaussQ& a, prec_t prec);
  static CBall exact_long(long r, long i, prec_t prec);
  static CBall from_doubles(double r, double i, prec_t prec);
  static CBall from_midrad(double r, double i, double rad, prec_t prec);

  prec_t prec() const { return re.prec(); }
  bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
  double real_mid() const { return re.to_double(); }
  double imag_mid() const { return im.to_double(); }
  // Upper bound for the distance of any point of the ball from the midpoint.
  double total_rad() const;
};

CBall operator+(const CBall& a, const CBall& b);
CBall operator-(const CBall& a, const CBall& b);
CBall operator-(const CBall& a);
CBall operator*(const CBall& a, const CBall& b);
CBall operator/(const CBall& a, const CBall& b); // requires |b| certified > 0
CBall conj(const CBall& a);
CBall exp_ball(const CBall& a);
CBall pow_ui_ball(const CBall& a, unsigned long e);
RBall modulus(const CBall& a);     // enclosure of |z|
RBall modulus_sq(const CBall& a);
CBall widen(const CBall& a, double extra_rad);

// Disk-form complex ball: exact complex center with one radius.  Unlike the
// rectangle form, multiplication does not re-box rotated rectangles, so long
// Horner chains keep enclosures tight; used for range enclosures over
// regions (winding numbers, zero localization).
struct DBall {
  Real re;
  Real im;
  Real rad; // nonnegative, kept with upward rounding

  explicit DBall(prec_t prec = kDefaultPrec)
      : re(prec), im(prec), rad(kRadiusPrec) {}

  static DBall from_doubles(double r, double i, prec_t prec);
  static DBall from_midrad(double r, double i, double rad, prec_t prec);
  static DBall from_gauss(const GaussQ& a, prec_t prec);

  prec_t prec() const { return re.prec(); }
  bool contains_zero() const;
  double real_mid() const { return re.to_double(); }
  double imag_mid() const { return im.to_double(); }
  double rad_double() const;
  CBall to_cball() const; // per-component radii = disk radius
};

DBall operator+(const DBall& a, const DBall& b);
DBall operator-(const DBall& a, const DBall& b);
DBall operator-(const DBall& a);
DBall operator*(const DBall& a, const DBall& b);
DBall exp_ball(const DBall& a);
RBall modulus(const DBall& a);
// grow the radius by an exact mpfr amount (upward)
void inflate(DBall& a, const Real& extra);

// Enclosure of arg over a zero-excluding ball: midpoint angle in (-pi, pi]
// plus a certified half-width.  Returns nullopt when 0 cannot be excluded
// or the half-width would reach pi/2.
struct ArgCone {
  double angle;
  double half_width;
};
std::optional<ArgCone> arg_enclosure(const CBall& a);
std::optional<ArgCone> arg_enclosure(const DBall& a);

std::string to_string(const RBall& a);
std::string to_string(const CBall& a);

} // namespace mhlab
