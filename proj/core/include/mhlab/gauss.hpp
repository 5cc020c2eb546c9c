#pragma once

#include <gmpxx.h>

#include <string>

#include "mhlab/error.hpp"

namespace mhlab {

using Int = mpz_class;
using Rat = mpq_class; // kept canonical by GMP: gcd-reduced, positive denominator

// Gaussian rational a + b*i with exact rational components.  This is the
// coefficient domain for curve components and the scalar field underneath
// all exact polynomial arithmetic.
struct GaussQ {
  Rat re;
  Rat im;

  GaussQ() : re(0), im(0) {}
  GaussQ(long v) : re(v), im(0) {}
  GaussQ(const Rat& r) : re(r), im(0) {}
  GaussQ(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  static GaussQ unit_i() { return GaussQ(Rat(0), Rat(1)); }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  bool is_one() const { return re == 1 && sgn(im) == 0; }

  GaussQ conj() const { return GaussQ(re, -im); }
  Rat norm() const { return re * re + im * im; } // |.|^2

  GaussQ operator-() const { return GaussQ(-re, -im); }
  GaussQ& operator+=(const GaussQ& o) { re += o.re; im += o.im; return *this; }
  GaussQ& operator-=(const GaussQ& o) { re -= o.re; im -= o.im; return *this; }
  GaussQ& operator*=(const GaussQ& o);
  GaussQ& operator/=(const GaussQ& o);

  friend GaussQ operator+(GaussQ a, const GaussQ& b) { a += b; return a; }
  friend GaussQ operator-(GaussQ a, const GaussQ& b) { a -= b; return a; }
  friend GaussQ operator*(GaussQ a, const GaussQ& b) { a *= b; return a; }
  friend GaussQ operator/(GaussQ a, const GaussQ& b) { a /= b; return a; }
  friend bool operator==(const GaussQ& a, const GaussQ& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussQ& a, const GaussQ& b) { return !(a == b); }
};

GaussQ inverse(const GaussQ& a); // throws on zero

std::string to_string(const Rat& r);
// Canonical form used by the instance grammar, e.g. "3/4+1/2i", "-i", "2".
std::string to_string(const GaussQ& a);

// Deterministic total order (lexicographic on (re, im)); used for
// canonical sorting only, it has no arithmetic meaning.
int compare(const GaussQ& a, const GaussQ& b);

} // namespace mhlab
