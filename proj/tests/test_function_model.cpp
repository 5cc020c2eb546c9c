#include <doctest.h>

#include "mhlab/expsum.hpp"

using namespace mhlab;

namespace {

Poly P(std::initializer_list<long> coeffs) {
  std::vector<GaussQ> c;
  for (long v : coeffs) c.emplace_back(v);
  return Poly::from_coeffs(std::move(c));
}

} // namespace

TEST_CASE("exp-poly sums canonicalize and cancel exactly") {
  ExpPolySum e1 = ExpPolySum::exponential(GaussQ(1L), Poly::one());
  ExpPolySum sum = e1 + ExpPolySum(P({1}));      // exp(z) + 1
  ExpPolySum diff = sum - e1 - ExpPolySum(P({1}));
  CHECK(diff.is_zero());
  // (exp(z))^2 = exp(2z)
  ExpPolySum sq = e1 * e1;
  CHECK(sq.term_count() == 1);
  CHECK(sq.terms()[0].mu == GaussQ(2L));
}

TEST_CASE("exp-poly derivative follows the product rule") {
  // d/dz [ z exp(2z) ] = (1 + 2z) exp(2z)
  ExpPolySum f = ExpPolySum::exponential(GaussQ(2L), Poly::var());
  ExpPolySum d = f.derivative();
  REQUIRE(d.term_count() == 1);
  CHECK(d.terms()[0].coeff == P({1, 2}));
}

TEST_CASE("exp-poly ball evaluation matches closed forms") {
  // exp(z) - 1 at z = i pi equals -2
  ExpPolySum h = ExpPolySum::exponential(GaussQ(1L), Poly::one()) - ExpPolySum(P({1}));
  CBall z = CBall::from_doubles(0.0, 3.14159265358979323846, 192);
  CBall v = h.eval(z, 192);
  CHECK(v.real_mid() == doctest::Approx(-2.0));
  CHECK(std::abs(v.imag_mid()) < 1e-14);
}

TEST_CASE("meromorphic model reduces the exact case") {
  // (z^2 - 1) / (z - 1) -> z + 1
  MeroFunction m(ExpPolySum(P({-1, 0, 1})), P({-1, 1}));
  REQUIRE(m.is_exact());
  CHECK(m.as_ratfunc().num() == P({1, 1}));
  CHECK(m.den().is_one());
}

TEST_CASE("jets of the meromorphic model are derivatives") {
  // h = z^2/(z+1); h(1) = 1/2, h'(1) = 3/4
  MeroFunction h(ExpPolySum(P({0, 0, 1})), P({1, 1}));
  auto jets = h.jet_exact(GaussQ(1L), 2);
  CHECK(jets[0] == GaussQ(Rat(1, 2)));
  CHECK(jets[1] == GaussQ(Rat(3, 4)));
  auto balls = h.jet(CBall::exact_long(1, 0, 128), 2, 128);
  CHECK(balls[0].real_mid() == doctest::Approx(0.5));
  CHECK(balls[1].real_mid() == doctest::Approx(0.75));
}

TEST_CASE("vanishing order at zero with exact leading coefficient") {
  // h = z^2 (exp(z) - 1) vanishes to order 3 at 0 with leading coeff 1
  ExpPolySum h = ExpPolySum(P({0, 0, 1})) *
                 (ExpPolySum::exponential(GaussQ(1L), Poly::one()) - ExpPolySum(P({1})));
  MeroFunction m(h, Poly::one());
  auto [ord, lead] = m.vanishing_order_at_zero();
  CHECK(ord == 3);
  CHECK(lead == GaussQ(1L));
}
