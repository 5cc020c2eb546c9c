#include <doctest.h>

#include <random>

#include "mhlab/ball.hpp"
#include "mhlab/error.hpp"
#include "mhlab/gauss.hpp"
#include "mhlab/poly.hpp"
#include "mhlab/ratfunc.hpp"

using namespace mhlab;

namespace {

Poly P(std::initializer_list<long> coeffs) {
  std::vector<GaussQ> c;
  for (long v : coeffs) c.emplace_back(v);
  return Poly::from_coeffs(std::move(c));
}

GaussQ random_gauss(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-6, 6);
  std::uniform_int_distribution<long> den(1, 4);
  Rat re(num(rng), den(rng));
  re.canonicalize();
  Rat im(num(rng), den(rng));
  im.canonicalize();
  return GaussQ(re, im);
}

Poly random_poly(std::mt19937_64& rng, int max_deg) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  int d = deg(rng);
  std::vector<GaussQ> c(d + 1);
  for (auto& x : c) x = random_gauss(rng);
  if (c.back().is_zero()) c.back() = GaussQ(1L);
  return Poly::from_coeffs(std::move(c));
}

} // namespace

TEST_CASE("gaussian rational field axioms on random samples") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 200; ++it) {
    GaussQ a = random_gauss(rng), b = random_gauss(rng);
    CHECK((a + b) - b == a);
    if (!b.is_zero()) CHECK((a / b) * b == a);
    CHECK(a * b == b * a);
  }
  CHECK(GaussQ::unit_i() * GaussQ::unit_i() == GaussQ(-1L));
}

TEST_CASE("poly_gcd spec examples") {
  // (z^2 - 1, z - 1) -> z - 1
  CHECK(poly_gcd(P({-1, 0, 1}), P({-1, 1})) == P({-1, 1}));
  // (a, 0) -> monic multiple of a
  Poly a = P({2, 4});
  CHECK(poly_gcd(a, Poly()) == a.monic());
  CHECK(poly_gcd(Poly(), Poly()) == Poly());
  // (z^2 + 1, z^2 + 2) -> 1
  CHECK(poly_gcd(P({1, 0, 1}), P({2, 0, 1})) == Poly::one());
}

TEST_CASE("poly_gcd divides both inputs exactly and is monic") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 100; ++it) {
    Poly a = random_poly(rng, 5), b = random_poly(rng, 5);
    Poly g = poly_gcd(a, b);
    if (g.is_zero()) {
      CHECK(a.is_zero());
      CHECK(b.is_zero());
      continue;
    }
    CHECK(g.lead().is_one());
    CHECK(divides(g, a));
    CHECK(divides(g, b));
  }
}

TEST_CASE("ratfunc_normalize spec examples") {
  // (z^2-1)/(z-1) -> z+1
  RatFunc f = ratfunc_normalize(P({-1, 0, 1}), P({-1, 1}));
  CHECK(f.num() == P({1, 1}));
  CHECK(f.den() == Poly::one());
  // 0/(z^3) -> 0/1
  RatFunc zero = ratfunc_normalize(Poly(), P({0, 0, 0, 1}));
  CHECK(zero.is_zero());
  CHECK(zero.den() == Poly::one());
  // (2z)/2: the monic-denominator convention rescales to z/1; the value as
  // a function is unchanged
  RatFunc g = ratfunc_normalize(P({0, 2}), P({2}));
  CHECK(g.den() == Poly::one());
  CHECK(g.eval_exact(GaussQ(3L)) == GaussQ(3L));
  // zero denominator rejected
  CHECK_THROWS_AS(ratfunc_normalize(P({1}), Poly()), Error);
}

TEST_CASE("ratfunc normalization is idempotent and evaluation preserving") {
  std::mt19937_64 rng(13);
  int checked = 0;
  for (int it = 0; it < 300 && checked < 100; ++it) {
    Poly num = random_poly(rng, 4);
    Poly den = random_poly(rng, 4);
    if (den.is_zero()) continue;
    GaussQ z0 = random_gauss(rng);
    if (den.eval(z0).is_zero()) continue;
    RatFunc f(num, den);
    if (f.den().eval(z0).is_zero()) continue;
    RatFunc f2(f.num(), f.den());
    CHECK(f == f2);
    // value unchanged off poles
    GaussQ direct = num.eval(z0) / den.eval(z0);
    CHECK(f.eval_exact(z0) == direct);
    ++checked;
  }
  CHECK(checked == 100);
}

TEST_CASE("exact arithmetic is exact: (a+b)-b == a for polys") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 100; ++it) {
    Poly a = random_poly(rng, 6), b = random_poly(rng, 6);
    CHECK((a + b) - b == a);
    CHECK(a * b == b * a);
  }
}

TEST_CASE("eval_complex certified evaluation") {
  // phi = (z+1)/1 at z0 = 1 -> 2
  RatFunc phi(P({1, 1}), Poly::one());
  CBall v = eval_certified(phi, GaussQ(1L), 128);
  CHECK(v.real_mid() == doctest::Approx(2.0).epsilon(1e-30));
  CHECK(v.im.mid.is_zero());
  // phi = 1/z at 0 -> pole
  RatFunc inv(Poly::one(), Poly::var());
  CHECK_THROWS_AS(eval_certified(inv, GaussQ(), 128), Error);
  try {
    eval_certified(inv, GaussQ(), 128);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PoleAtEvaluationPoint);
  }
  // phi = (z^2-1)/(z-2) at 3 -> 8
  RatFunc h(P({-1, 0, 1}), P({-2, 1}));
  CBall w = eval_certified(h, GaussQ(3L), 128);
  CHECK(w.real_mid() == doctest::Approx(8.0).epsilon(1e-30));
  // relative error contract
  CHECK(w.re.rad_double() <= 8.0 * std::pow(2.0, -127));
}

TEST_CASE("ball arithmetic encloses") {
  RBall third = RBall::from_rat(Rat(1) / Rat(3), 128);
  CHECK(third.contains_zero() == false);
  CHECK(third.lower() <= 1.0 / 3.0);
  CHECK(third.upper() >= 1.0 / 3.0);
  RBall x = third * RBall::exact_long(3, 128) - RBall::exact_long(1, 128);
  CHECK(x.contains_zero());
  CHECK(x.rad_double() < 1e-30);
  // complex exp: |exp(i pi)| near -1
  CBall ipi = CBall::from_doubles(0.0, 3.14159265358979323846, 128);
  CBall e = exp_ball(ipi);
  CHECK(e.real_mid() == doctest::Approx(-1.0));
  CHECK(std::abs(e.imag_mid()) < 1e-15);
}

TEST_CASE("floor decision on balls") {
  RBall v = RBall::from_rat(Rat(7) / Rat(2), 128);
  auto f = floor_if_unambiguous(v);
  REQUIRE(f.has_value());
  CHECK(*f == 3);
  RBall wide = RBall::from_midrad(3.0, 0.5, 64);
  CHECK(!floor_if_unambiguous(wide).has_value());
}

TEST_CASE("squarefree decomposition recovers multiplicities") {
  // (z-1)^2 (z+2)^3 z
  Poly p = P({-1, 1}).pow(2) * P({2, 1}).pow(3) * Poly::var();
  auto sf = squarefree_decomposition(p);
  Poly rebuilt = Poly::one();
  for (const auto& f : sf) rebuilt *= f.factor.pow(f.multiplicity);
  CHECK(rebuilt == p.monic());
  int max_mult = 0;
  for (const auto& f : sf) max_mult = std::max(max_mult, f.multiplicity);
  CHECK(max_mult == 3);
}
