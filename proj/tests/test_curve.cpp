#include <doctest.h>

#include <random>

#include "mhlab/curve.hpp"
#include "mhlab/error.hpp"

using namespace mhlab;

namespace {

Poly P(std::initializer_list<long> coeffs) {
  std::vector<GaussQ> c;
  for (long v : coeffs) c.emplace_back(v);
  return Poly::from_coeffs(std::move(c));
}

} // namespace

TEST_CASE("reduce_representation spec examples") {
  // (z, z^2) -> (1, z)
  PolyCurve a = reduce_representation({Poly::var(), P({0, 0, 1})});
  CHECK(a.comps[0] == Poly::one());
  CHECK(a.comps[1] == Poly::var());
  // (1, z) stays
  PolyCurve b = reduce_representation({Poly::one(), Poly::var()});
  CHECK(b.comps[0] == Poly::one());
  // (z^2-1, z-1) -> (z+1, 1)
  PolyCurve c = reduce_representation({P({-1, 0, 1}), P({-1, 1})});
  CHECK(c.comps[0] == P({1, 1}));
  CHECK(c.comps[1] == Poly::one());
  // all-zero input rejected
  CHECK_THROWS_AS(reduce_representation({Poly(), Poly()}), Error);
  // constant map rejected
  CHECK_THROWS_AS(reduce_representation({P({2}), P({3})}), Error);
  // gcd of the reduced output is 1
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> cc(-4, 4);
  for (int it = 0; it < 50; ++it) {
    Poly f0 = P({cc(rng), 1});
    Poly f1 = P({cc(rng), cc(rng), 1});
    Poly common = P({cc(rng), 1});
    try {
      PolyCurve r = reduce_representation({f0 * common, f1 * common});
      Poly g = poly_gcd(r.comps[0], r.comps[1]);
      CHECK(g == Poly::one());
    } catch (const Error&) {
      // proportional draws are legitimately rejected
    }
  }
}

TEST_CASE("jet_of_ratio spec examples") {
  Curve f{reduce_representation({Poly::one(), Poly::var()})};
  Jet j = jet_of_ratio_exact(f, 1, 0, GaussQ(2L), 2, 128);
  REQUIRE(j.exact.has_value());
  CHECK((*j.exact)[0] == GaussQ(2L));
  CHECK((*j.exact)[1] == GaussQ(1L));

  Curve f2{reduce_representation({Poly::one(), P({0, 0, 1})})};
  Jet j2 = jet_of_ratio_exact(f2, 1, 0, GaussQ(1L), 3, 128);
  CHECK((*j2.exact)[0] == GaussQ(1L));
  CHECK((*j2.exact)[1] == GaussQ(2L));
  CHECK((*j2.exact)[2] == GaussQ(2L));

  // constant ratio: all higher derivatives vanish ((z : 3z : z^2) reduces to
  // (1 : 3 : z), whose first ratio is the constant 3)
  Curve f3{reduce_representation({Poly::var(), P({0, 3}), P({0, 0, 1})})};
  Jet j3 = jet_of_ratio_exact(f3, 1, 0, GaussQ(5L), 4, 128);
  CHECK((*j3.exact)[0] == GaussQ(3L));
  for (int k = 1; k < 4; ++k) CHECK((*j3.exact)[k].is_zero());

  // denominator component vanishing at the base point is an error
  CHECK_THROWS_AS(jet_of_ratio_exact(f, 0, 1, GaussQ(), 2, 128), Error);
}

TEST_CASE("exact jets are precision independent; agree with finite differences") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> cc(-4, 4);
  int done = 0;
  for (int it = 0; it < 400 && done < 100; ++it) {
    Poly f0 = P({cc(rng), cc(rng), 1});
    Poly f1 = P({cc(rng), 1});
    GaussQ z0{Rat(cc(rng))};
    PolyCurve pc;
    try {
      pc = reduce_representation({f0, f1});
    } catch (const Error&) {
      continue;
    }
    Curve f{pc};
    if (f.poly().comps[0].eval(z0).is_zero()) continue;
    Jet lo = jet_of_ratio_exact(f, 1, 0, z0, 3, 64);
    Jet hi = jet_of_ratio_exact(f, 1, 0, z0, 3, 128);
    REQUIRE(lo.exact.has_value());
    CHECK(*lo.exact == *hi.exact); // doubled precision changes nothing

    // central finite differences with step 1e-4 approximate the derivative
    auto ratio_at = [&](double x) {
      double num = 0, den = 0, xp = 1;
      const Poly& a = f.poly().comps[1];
      const Poly& b = f.poly().comps[0];
      for (int k = 0; k <= std::max(a.degree(), b.degree()); ++k) {
        if (k <= a.degree()) num += a.coeff(k).re.get_d() * xp;
        if (k <= b.degree()) den += b.coeff(k).re.get_d() * xp;
        xp *= x;
      }
      return num / den;
    };
    double x0 = z0.re.get_d();
    double h = 1e-4;
    double fd = (ratio_at(x0 + h) - ratio_at(x0 - h)) / (2 * h);
    double exact1 = (*lo.exact)[1].re.get_d();
    if (std::abs(exact1) > 1e-3)
      CHECK(std::abs(fd - exact1) / std::abs(exact1) < 1e-6);
    ++done;
  }
  CHECK(done == 100);
}

TEST_CASE("ball jets match exact jets on the polynomial model") {
  Curve f{reduce_representation({P({1, 0, 1}), Poly::var()})};
  GaussQ z0{Rat(3)};
  Jet exact = jet_of_ratio_exact(f, 1, 0, z0, 4, 128);
  Jet balls = jet_of_ratio(f, 1, 0, CBall::from_gauss(z0, 128), 4, 128);
  for (int k = 0; k < 4; ++k) {
    CHECK(balls.values[k].real_mid() ==
          doctest::Approx((*exact.exact)[k].re.get_d()).epsilon(1e-14));
  }
}

TEST_CASE("nondegeneracy search finds the Veronese relation") {
  Curve f{reduce_representation({Poly::one(), Poly::var(), P({0, 0, 1})})};
  NondegeneracyReport rep = nondegeneracy_search(f, {}, 2, 0);
  REQUIRE(rep.relation_found);
  RatFunc composed = compose_exact(*rep.relation, f.poly());
  CHECK(composed.is_zero());
}

TEST_CASE("nondegeneracy search certifies misses within bounds") {
  // (1 : z): with no generators the coefficient space is the constants, and
  // constant relations would force proportionality
  Curve line{reduce_representation({Poly::one(), Poly::var()})};
  CHECK(!nondegeneracy_search(line, {}, 3, 2).relation_found);
  // (1 : z : exp z): monomials z^a e^{bz} are independent
  ExpPolyCurve e;
  e.n = 2;
  e.comps = {ExpPolySum(Poly::one()), ExpPolySum(Poly::var()),
             ExpPolySum::exponential(GaussQ(1L), Poly::one())};
  Curve fe{e};
  CHECK(!nondegeneracy_search(fe, {}, 2, 2).relation_found);
}

TEST_CASE("nondegeneracy search honors supplied generators") {
  // f = (1 : z) with generator z: x_1 - z x_0 annihilates f
  Curve line{reduce_representation({Poly::one(), Poly::var()})};
  std::vector<RatFunc> gens{RatFunc(Poly::var())};
  NondegeneracyReport rep = nondegeneracy_search(line, gens, 1, 1);
  REQUIRE(rep.relation_found);
  CHECK(compose_exact(*rep.relation, line.poly()).is_zero());
}

TEST_CASE("default field generators are coefficient quotients") {
  MovingHomPoly Q(1, 1);
  Q.set_coeff(MultiIndex::unit(2, 0), RatFunc(Poly::var()));  // z on x_0
  Q.set_coeff(MultiIndex::unit(2, 1), RatFunc(P({1, 0, 1}))); // z^2+1 on x_1
  std::vector<MovingHomPoly> ts{Q};
  auto gens = default_field_generators(ts);
  REQUIRE(gens.size() == 1);
  CHECK(gens[0] == RatFunc(P({1, 0, 1})) / RatFunc(Poly::var()));
}
