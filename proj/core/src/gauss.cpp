#include "mhlab/gauss.hpp"

#include "mhlab/error.hpp"

namespace mhlab {

GaussQ& GaussQ::operator*=(const GaussQ& o) {
  Rat r = re * o.re - im * o.im;
  Rat i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

GaussQ inverse(const GaussQ& a) {
  if (a.is_zero())
    throw Error(ErrorKind::InvalidInput, "division by zero Gaussian rational");
  Rat n = a.norm();
  return GaussQ(a.re / n, -a.im / n);
}

GaussQ& GaussQ::operator/=(const GaussQ& o) {
  *this *= inverse(o);
  return *this;
}

std::string to_string(const Rat& r) { return r.get_str(); }

std::string to_string(const GaussQ& a) {
  if (a.is_zero()) return "0";
  std::string out;
  if (sgn(a.re) != 0) out += to_string(a.re);
  if (sgn(a.im) != 0) {
    Rat ai = abs(a.im);
    if (!out.empty() && sgn(a.im) > 0) out += "+";
    if (sgn(a.im) < 0) out += "-";
    if (ai != 1) out += to_string(ai);
    out += "i";
  }
  return out;
}

int compare(const GaussQ& a, const GaussQ& b) {
  int c = cmp(a.re, b.re);
  if (c != 0) return c;
  return cmp(a.im, b.im);
}

} // namespace mhlab
