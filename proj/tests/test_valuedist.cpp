#include <doctest.h>

#include <cmath>
#include <random>

#include "mhlab/characteristic.hpp"
#include "mhlab/counting.hpp"
#include "mhlab/divisor.hpp"
#include "mhlab/error.hpp"

using namespace mhlab;

namespace {

constexpr double kPi = 3.14159265358979323846;

Poly P(std::initializer_list<long> coeffs) {
  std::vector<GaussQ> c;
  for (long v : coeffs) c.emplace_back(v);
  return Poly::from_coeffs(std::move(c));
}

ExpPolySum expz_minus_1() {
  return ExpPolySum::exponential(GaussQ(1L), Poly::one()) - ExpPolySum(P({1}));
}

Divisor divisor_of_poly(const Poly& p) {
  return zero_divisor(MeroFunction(RatFunc(p)), 10.0);
}

} // namespace

TEST_CASE("zero divisor of exact models") {
  // z^2: double zero at the origin
  Divisor d1 = divisor_of_poly(P({0, 0, 1}));
  REQUIRE(d1.points.size() == 1);
  CHECK(d1.points[0].multiplicity == 2);
  CHECK(d1.points[0].mod_hi < 1e-9);
  // z^2 - 1: simple zeros at -1 and 1
  Divisor d2 = divisor_of_poly(P({-1, 0, 1}));
  REQUIRE(d2.points.size() == 2);
  CHECK(d2.points[0].location.real_mid() == doctest::Approx(-1.0));
  CHECK(d2.points[1].location.real_mid() == doctest::Approx(1.0));
  CHECK(d2.points[0].multiplicity == 1);
  // complex roots: z^2 + 1
  Divisor d3 = divisor_of_poly(P({1, 0, 1}));
  REQUIRE(d3.points.size() == 2);
  CHECK(std::abs(d3.points[0].location.imag_mid()) == doctest::Approx(1.0));
  // the zero function is rejected
  CHECK_THROWS_AS(zero_divisor(MeroFunction(RatFunc()), 5.0), Error);
}

TEST_CASE("zero divisor of exp(z)-1 by the argument principle") {
  MeroFunction h(expz_minus_1(), Poly::one());
  Divisor d = zero_divisor(h, 7.0);
  REQUIRE(d.points.size() == 3); // 0 and +-2 pi i inside |z| <= 7
  for (const auto& p : d.points) CHECK(p.multiplicity == 1);
  CHECK(d.points[0].location.imag_mid() == doctest::Approx(-2 * kPi).epsilon(1e-7));
  CHECK(std::abs(d.points[1].location.real_mid()) < 1e-9);
  CHECK(std::abs(d.points[1].location.imag_mid()) < 1e-9);
  CHECK(d.points[2].location.imag_mid() == doctest::Approx(2 * kPi).epsilon(1e-7));
  // argument-principle count on the boundary equals the located total
  int count = *winding_circle(analytic_of(h.num()), 0.0, 0.0, 7.0, 128, 40000);
  CHECK(count == d.total_multiplicity());
}

TEST_CASE("multiple transcendental zero: (exp(z)-1)^2 clusters with winding 2") {
  ExpPolySum h = expz_minus_1() * expz_minus_1();
  Divisor d = zero_divisor(MeroFunction(h, Poly::one()), 2.0);
  REQUIRE(d.points.size() == 1);
  CHECK(d.points[0].multiplicity == 2);
}

TEST_CASE("counting_function spec examples") {
  const double e = std::exp(1.0);
  // single simple zero at 0, r = e, L = inf -> 1
  Divisor d1 = divisor_of_poly(Poly::var());
  CHECK(counting_function(d1, e, Truncation::infinite()) == doctest::Approx(1.0));
  // multiplicity 3 at 0, L = 2 -> 2
  Divisor d2 = divisor_of_poly(P({0, 0, 0, 1}));
  CHECK(counting_function(d2, e, Truncation::level(Int(2))) == doctest::Approx(2.0));
  // zeros at 2 and 3, r = 6 -> log 3 + log 2
  Divisor d3 = divisor_of_poly(P({-2, 1}) * P({-3, 1}));
  CHECK(counting_function(d3, 6.0, Truncation::infinite()) ==
        doctest::Approx(std::log(3.0) + std::log(2.0)));
  // tau-collision raises AmbiguousRadius
  CHECK_THROWS_AS(counting_function(d3, 2.0 + 1e-12, Truncation::infinite()), Error);
}

TEST_CASE("counting function monotonicity in r and L") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<long> cc(-6, 6);
  for (int it = 0; it < 20; ++it) {
    Poly p = Poly::one();
    for (int k = 0; k < 4; ++k) p *= P({cc(rng), 1});
    if (p.degree() < 1) continue;
    Divisor d = divisor_of_poly(p);
    double prev = -1;
    for (double r : {2.5, 4.7, 9.3, 17.1}) {
      double n_inf = counting_function(d, r, Truncation::infinite());
      double n_1 = counting_function(d, r, Truncation::level(Int(1)));
      double n_2 = counting_function(d, r, Truncation::level(Int(2)));
      CHECK(n_inf >= prev - 1e-12);
      CHECK(n_1 <= n_2 + 1e-12);
      CHECK(n_2 <= n_inf + 1e-12);
      CHECK(n_inf <= 4 * n_1 + 1e-12); // N <= (max mult) N^(1), max mult <= 4
      prev = n_inf;
    }
  }
}

TEST_CASE("characteristic closed forms") {
  const double e = std::exp(1.0);
  Curve f{reduce_representation({Poly::one(), Poly::var()})};
  CharacteristicValue t1 = characteristic(f, e);
  CHECK(t1.value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(t1.exact_slope == 1);
  CharacteristicValue t0 = characteristic(f, 1.0);
  CHECK(std::abs(t0.value) < 1e-8);
  Curve g{reduce_representation({Poly::one(), Poly::var(), P({0, 0, 1})})};
  CharacteristicValue t2 = characteristic(g, e * e);
  CHECK(t2.value == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(t2.exact_slope == 2);
}

TEST_CASE("characteristic of scalars") {
  const double e = std::exp(1.0);
  CHECK(characteristic_of_scalar(RatFunc(5L), e).value == 0.0);
  CHECK(characteristic_of_scalar(RatFunc(Poly::var()), e).value ==
        doctest::Approx(1.0).epsilon(1e-6));
  // 1/(z-1): T(r) = log r - (1/pi) Cl2(pi/3) once r >= 2 (the circle-average
  // at radius 1 contributes the Clausen constant through the normalization)
  RatFunc pole(Poly::one(), P({-1, 1}));
  const double clausen_term = 1.01494160640965362502 / kPi;
  CHECK(characteristic_of_scalar(pole, e).value ==
        doctest::Approx(1.0 - clausen_term).epsilon(1e-5));
  CHECK(characteristic_of_scalar(pole, e * e).value -
            characteristic_of_scalar(pole, e).value ==
        doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("characteristic asymptotics for the exponential curve") {
  ExpPolyCurve e;
  e.n = 1;
  e.comps = {ExpPolySum(Poly::one()),
             ExpPolySum::exponential(GaussQ(1L), Poly::one())};
  Curve f{e};
  double t50 = characteristic(f, 50.0).value;
  CHECK(t50 / (50.0 / kPi) > 0.95);
  CHECK(t50 / (50.0 / kPi) < 1.05);
}

TEST_CASE("smallness classification rules") {
  Curve fpoly{reduce_representation({Poly::one(), P({0, 0, 1})})};
  ExpPolyCurve e;
  e.n = 1;
  e.comps = {ExpPolySum(Poly::one()),
             ExpPolySum::exponential(GaussQ(1L), Poly::one())};
  Curve fexp{e};
  // constants are small for any map
  CHECK(smallness_classify(RatFunc(5L), fpoly).verdict == Smallness::Small);
  // nonconstant rational vs polynomial curve: not small, evidence attached
  SmallnessReport notsmall =
      smallness_classify(RatFunc(Poly::var(), P({1, 1})), fpoly);
  CHECK(notsmall.verdict == Smallness::NotSmall);
  CHECK(!notsmall.ratio_trace.empty());
  // rational vs exponential curve: small
  CHECK(smallness_classify(RatFunc(Poly::var()), fexp).verdict == Smallness::Small);
}

TEST_CASE("fmt probe margins and fitted constants") {
  Curve f{reduce_representation({Poly::one(), Poly::var()})};
  RadiusGrid grid;
  grid.radii = {2.0, 4.0, 8.0, 16.0, 32.0};
  // Q = x_0: N(r) = 0, margin = T_f(r) >= 0
  MovingHomPoly Q0(1, 1);
  Q0.set_coeff(MultiIndex::unit(2, 0), RatFunc(1L));
  FmtProbeReport r0 = fmt_probe(f, Q0, grid);
  CHECK(r0.c_fit == 0.0);
  for (const auto& row : r0.rows) {
    CHECK(row.counting == 0.0);
    CHECK(row.margin >= 0.0);
  }
  // Q = x_1 - x_0: N(r) = log r, margins bounded
  MovingHomPoly Q1(1, 1);
  Q1.set_coeff(MultiIndex::unit(2, 1), RatFunc(1L));
  Q1.set_coeff(MultiIndex::unit(2, 0), RatFunc(-1L));
  FmtProbeReport r1 = fmt_probe(f, Q1, grid);
  for (const auto& row : r1.rows) {
    CHECK(row.counting == doctest::Approx(std::log(row.r)).epsilon(1e-9));
    CHECK(row.margin >= -1e-12);
  }
  // Q(f) identically zero is rejected
  MovingHomPoly Qz(1, 1);
  Qz.set_coeff(MultiIndex::unit(2, 1), RatFunc(1L));
  Qz.set_coeff(MultiIndex::unit(2, 0), RatFunc(-Poly::var()));
  CHECK_THROWS_AS(fmt_probe(f, Qz, grid), Error);
}

TEST_CASE("fmt probe batch: margins nonnegative with finite fitted constants") {
  std::mt19937_64 rng(59);
  std::uniform_int_distribution<long> cc(-4, 4);
  RadiusGrid grid;
  grid.radii = {2.3, 5.1, 11.7, 23.9};
  int done = 0;
  for (int it = 0; it < 60 && done < 25; ++it) {
    PolyCurve pc;
    try {
      pc = reduce_representation({P({cc(rng), 1}), P({cc(rng), cc(rng), 1})});
    } catch (const Error&) {
      continue;
    }
    Curve f{pc};
    MovingHomPoly Q(1, 1 + (it % 2));
    for (const auto& I : enumerate_index_set(1, Q.degree()))
      Q.set_coeff(I, it % 3 == 0 ? RatFunc(P({cc(rng), cc(rng)})) : RatFunc(cc(rng)));
    MeroFunction comp = compose_with_curve(Q, f);
    if (comp.is_zero()) continue;
    FmtProbeReport rep = fmt_probe(f, Q, grid);
    CHECK(std::isfinite(rep.c_fit));
    for (const auto& row : rep.rows) CHECK(row.margin >= -1e-9);
    ++done;
  }
  CHECK(done == 25);
}

TEST_CASE("jensen crosscheck spec examples") {
  // h = z at r = e: both sides equal 1
  JensenReport j1 = jensen_crosscheck(MeroFunction(RatFunc(Poly::var())), std::exp(1.0));
  CHECK(j1.circle_average == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(j1.divisor_side == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(j1.discrepancy < 1e-6);
  CHECK(j1.vanishing_order == 1);
  // h = z^2 - 1 at r = 2
  JensenReport j2 = jensen_crosscheck(MeroFunction(RatFunc(P({-1, 0, 1}))), 2.0);
  CHECK(j2.discrepancy < 1e-6);
  CHECK(j2.vanishing_order == 0);
  // h = exp(z) - 1 at r = 7: numeric both sides, independent code paths
  JensenReport j3 = jensen_crosscheck(MeroFunction(expz_minus_1(), Poly::one()), 7.0);
  CHECK(j3.discrepancy < 1e-4);
  CHECK(j3.vanishing_order == 1);
  // non-entire models are rejected
  MeroFunction non_entire(ExpPolySum(Poly::one()), Poly::var());
  CHECK_THROWS_AS(jensen_crosscheck(non_entire, 2.0), Error);
}

TEST_CASE("characteristic slope bound for polynomial curves") {
  std::mt19937_64 rng(61);
  std::uniform_int_distribution<long> cc(-5, 5);
  for (int it = 0; it < 5; ++it) {
    PolyCurve pc;
    try {
      pc = reduce_representation(
          {P({cc(rng), 1}), P({cc(rng), cc(rng), cc(rng), 1})});
    } catch (const Error&) {
      continue;
    }
    Curve f{pc};
    int D = 3;
    double worst = 0.0;
    for (double r : {2.0, 5.0, 20.0, 60.0, 100.0}) {
      double t = characteristic(f, r).value;
      worst = std::max(worst, std::abs(t - D * std::log(r)));
    }
    CHECK(worst < 10.0); // |T - D log r| stays bounded by a modest constant
  }
}

TEST_CASE("radius grids avoid divisor moduli") {
  Divisor d = divisor_of_poly(P({-2, 1}) * P({-3, 1}));
  const Divisor* ptr = &d;
  RadiusGrid g = make_radius_grid(2.0 - 1e-12, 10.0, 16, std::span(&ptr, 1));
  for (double r : g.radii)
    for (const auto& p : d.points)
      CHECK(std::abs(r - 0.5 * (p.mod_lo + p.mod_hi)) > g.tau);
}
