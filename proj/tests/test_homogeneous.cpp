#include <doctest.h>

#include <random>

#include "mhlab/curve.hpp"
#include "mhlab/homogeneous.hpp"

using namespace mhlab;

namespace {

Poly P(std::initializer_list<long> coeffs) {
  std::vector<GaussQ> c;
  for (long v : coeffs) c.emplace_back(v);
  return Poly::from_coeffs(std::move(c));
}

MultiIndex MI(std::initializer_list<int> e) { return MultiIndex(std::vector<int>(e)); }

} // namespace

TEST_CASE("enumerate_index_set spec examples") {
  auto s12 = enumerate_index_set(1, 2);
  REQUIRE(s12.size() == 3);
  CHECK(s12[0] == MI({2, 0}));
  CHECK(s12[1] == MI({1, 1}));
  CHECK(s12[2] == MI({0, 2}));

  auto s21 = enumerate_index_set(2, 1);
  REQUIRE(s21.size() == 3);
  CHECK(s21[0] == MI({1, 0, 0}));
  CHECK(s21[1] == MI({0, 1, 0}));
  CHECK(s21[2] == MI({0, 0, 1}));

  CHECK(enumerate_index_set(2, 3).size() == 10); // C(5,2)
  for (const auto& I : enumerate_index_set(2, 3)) CHECK(I.weight() == 3);
}

TEST_CASE("freeze evaluates coefficients") {
  // Q = z x_0^2 + x_1^2 frozen at 2 -> 2 x_0^2 + x_1^2
  MovingHomPoly Q(1, 2);
  Q.set_coeff(MI({2, 0}), RatFunc(Poly::var()));
  Q.set_coeff(MI({0, 2}), RatFunc(1L));
  FrozenHomPoly F = freeze(Q, GaussQ(2L), 128);
  std::vector<CBall> x{CBall::exact_long(1, 0, 128), CBall::exact_long(0, 0, 128)};
  CHECK(F.eval(x, 128).real_mid() == doctest::Approx(2.0));
  // constant coefficients freeze to themselves at any point
  MovingHomPoly C(1, 1);
  C.set_coeff(MI({1, 0}), RatFunc(5L));
  FrozenHomPoly FC = freeze(C, GaussQ(Rat(7)), 128);
  CHECK(FC.coeffs().begin()->second.real_mid() == doctest::Approx(5.0));
  // coefficient pole at the freeze point
  MovingHomPoly Pole(1, 1);
  Pole.set_coeff(MI({1, 0}), RatFunc(Poly::one(), P({-1, 1}))); // 1/(z-1)
  CHECK_THROWS_AS(freeze(Pole, GaussQ(1L), 128), Error);
}

TEST_CASE("compose_with_curve spec examples") {
  Curve f{reduce_representation({Poly::one(), Poly::var()})}; // (1 : z)
  // Q = x_0 -> 1
  MovingHomPoly Q0(1, 1);
  Q0.set_coeff(MI({1, 0}), RatFunc(1L));
  CHECK(compose_exact(Q0, f.poly()) == RatFunc(1L));
  // Q = x_0 x_1 - x_0^2 -> z - 1
  MovingHomPoly Q1(1, 2);
  Q1.set_coeff(MI({1, 1}), RatFunc(1L));
  Q1.set_coeff(MI({2, 0}), RatFunc(-1L));
  CHECK(compose_exact(Q1, f.poly()) == RatFunc(P({-1, 1})));
  // Q = z x_0^2 + x_1^2 -> z + z^2
  MovingHomPoly Q2(1, 2);
  Q2.set_coeff(MI({2, 0}), RatFunc(Poly::var()));
  Q2.set_coeff(MI({0, 2}), RatFunc(1L));
  CHECK(compose_exact(Q2, f.poly()) == RatFunc(P({0, 1, 1})));
  // identically vanishing composition is flagged by is_zero
  MovingHomPoly Q3(1, 1);
  Q3.set_coeff(MI({0, 1}), RatFunc(1L));                // x_1
  Q3.set_coeff(MI({1, 0}), RatFunc(-Poly::var()));      // - z x_0
  CHECK(compose_with_curve(Q3, f).is_zero());
}

TEST_CASE("raise_to_common_degree spec examples") {
  // equal degrees: identity
  MovingHomPoly A(1, 2);
  A.set_coeff(MI({2, 0}), RatFunc(1L));
  MovingHomPoly B(1, 2);
  B.set_coeff(MI({0, 2}), RatFunc(3L));
  std::vector<MovingHomPoly> same{A, B};
  auto eq = raise_to_common_degree(same);
  CHECK(eq[0] == A);
  CHECK(eq[1] == B);
  // degrees (1,2): x_0 + x_1 squares
  MovingHomPoly L(1, 1);
  L.set_coeff(MI({1, 0}), RatFunc(1L));
  L.set_coeff(MI({0, 1}), RatFunc(1L));
  std::vector<MovingHomPoly> mixed{L, B};
  auto eq2 = raise_to_common_degree(mixed);
  CHECK(eq2[0].degree() == 2);
  CHECK(eq2[0].coeff(MI({1, 1})) == RatFunc(2L));
  CHECK(eq2[1] == B);
  // degrees (2,3) -> lcm 6
  MovingHomPoly C3(1, 3);
  C3.set_coeff(MI({3, 0}), RatFunc(1L));
  std::vector<MovingHomPoly> m2{A, C3};
  auto eq3 = raise_to_common_degree(m2);
  CHECK(eq3[0].degree() == 6);
  CHECK(eq3[1].degree() == 6);
}

TEST_CASE("homogeneity of frozen forms") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> coeff(-5, 5);
  for (int it = 0; it < 20; ++it) {
    int n = 1 + static_cast<int>(rng() % 2);
    int d = 1 + static_cast<int>(rng() % 3);
    MovingHomPoly Q(n, d);
    for (const auto& I : enumerate_index_set(n, d))
      if (rng() % 2) Q.set_coeff(I, RatFunc(coeff(rng)));
    if (Q.is_zero()) continue;
    FrozenHomPoly F = freeze(Q, GaussQ(2L), 128);
    std::vector<CBall> x;
    for (int k = 0; k <= n; ++k)
      x.push_back(CBall::from_doubles(0.3 + 0.1 * k, -0.2 + 0.05 * k, 128));
    CBall lambda = CBall::from_doubles(1.7, 0.4, 128);
    std::vector<CBall> lx;
    for (const auto& xi : x) lx.push_back(lambda * xi);
    CBall lhs = F.eval(lx, 128);
    CBall rhs = pow_ui_ball(lambda, d) * F.eval(x, 128);
    CBall diff = lhs - rhs;
    CHECK(std::abs(diff.real_mid()) < 1e-25);
    CHECK(std::abs(diff.imag_mid()) < 1e-25);
  }
}

TEST_CASE("composition consistency: compose then evaluate == freeze then evaluate") {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<long> coeff(-4, 4);
  int done = 0;
  for (int it = 0; it < 200 && done < 100; ++it) {
    int n = 1;
    int d = 1 + static_cast<int>(rng() % 2);
    MovingHomPoly Q(n, d);
    for (const auto& I : enumerate_index_set(n, d)) {
      long a = coeff(rng);
      long b = coeff(rng);
      // moving coefficient a + b z
      Q.set_coeff(I, RatFunc(P({a, b})));
    }
    if (Q.is_zero()) continue;
    std::vector<Poly> comps{P({1, coeff(rng)}), P({coeff(rng), 1})};
    Curve f{[&] {
      try {
        return reduce_representation(comps);
      } catch (const Error&) {
        return reduce_representation({Poly::one(), Poly::var()});
      }
    }()};
    MeroFunction comp = compose_with_curve(Q, f);
    GaussQ z0(Rat(3), Rat(1));
    CBall zb = CBall::from_gauss(z0, 160);
    if (comp.is_zero()) continue;
    CBall via_comp = comp.eval(zb, 160);
    FrozenHomPoly F = freeze(Q, z0, 160);
    std::vector<CBall> fx;
    for (int k = 0; k <= n; ++k) fx.push_back(f.component(k).eval(zb, 160));
    CBall via_freeze = F.eval(fx, 160);
    CBall diff = via_comp - via_freeze;
    CHECK(std::abs(diff.real_mid()) < 1e-30);
    CHECK(std::abs(diff.imag_mid()) < 1e-30);
    ++done;
  }
  CHECK(done == 100);
}

TEST_CASE("degree equalization preserves frozen zero sets") {
  // a common zero of the frozen originals stays a zero of the raised family
  MovingHomPoly A(1, 1);
  A.set_coeff(MI({1, 0}), RatFunc(1L));
  A.set_coeff(MI({0, 1}), RatFunc(-1L)); // x_0 - x_1
  MovingHomPoly B(1, 2);
  B.set_coeff(MI({2, 0}), RatFunc(1L));
  B.set_coeff(MI({0, 2}), RatFunc(-1L)); // x_0^2 - x_1^2
  std::vector<MovingHomPoly> fam{A, B};
  auto eq = raise_to_common_degree(fam);
  std::vector<CBall> zero_pt{CBall::exact_long(1, 0, 128),
                             CBall::exact_long(1, 0, 128)};
  for (const auto& Q : eq) {
    FrozenHomPoly F = freeze(Q, GaussQ(5L), 128);
    CBall v = F.eval(zero_pt, 128);
    CHECK(v.contains_zero());
  }
}
