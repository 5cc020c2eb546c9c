#include <doctest.h>

#include <random>

#include "mhlab/resultant.hpp"

using namespace mhlab;

namespace {

Poly P(std::initializer_list<long> coeffs) {
  std::vector<GaussQ> c;
  for (long v : coeffs) c.emplace_back(v);
  return Poly::from_coeffs(std::move(c));
}

MultiIndex MI(std::initializer_list<int> e) { return MultiIndex(std::vector<int>(e)); }

// --- independent Sylvester oracle (n = 1), fraction-field elimination ---

// binary form of degree d as coefficient vector c[k] on x_0^(d-k) x_1^k
using BinForm = std::vector<RatFunc>;

BinForm coeffs_of(const MovingHomPoly& Q) {
  BinForm out(Q.degree() + 1);
  for (int k = 0; k <= Q.degree(); ++k)
    out[k] = Q.coeff(MultiIndex(std::vector<int>{Q.degree() - k, k}));
  return out;
}

RatFunc det_field(std::vector<std::vector<RatFunc>> m) {
  size_t n = m.size();
  RatFunc det(1L);
  bool neg = false;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && m[piv][col].is_zero()) ++piv;
    if (piv == n) return RatFunc();
    if (piv != col) {
      std::swap(m[piv], m[col]);
      neg = !neg;
    }
    det = det * m[col][col];
    RatFunc inv = RatFunc(1L) / m[col][col];
    for (size_t r = col + 1; r < n; ++r) {
      if (m[r][col].is_zero()) continue;
      RatFunc f = m[r][col] * inv;
      for (size_t j = col; j < n; ++j) m[r][j] = m[r][j] - f * m[col][j];
    }
  }
  return neg ? RatFunc() - det : det;
}

RatFunc sylvester_resultant(const BinForm& p, const BinForm& q) {
  int a = static_cast<int>(p.size()) - 1;
  int b = static_cast<int>(q.size()) - 1;
  int n = a + b;
  std::vector<std::vector<RatFunc>> m(n, std::vector<RatFunc>(n));
  for (int r = 0; r < b; ++r)
    for (int k = 0; k <= a; ++k) m[r][r + k] = p[k];
  for (int r = 0; r < a; ++r)
    for (int k = 0; k <= b; ++k) m[b + r][r + k] = q[k];
  return det_field(std::move(m));
}

MovingHomPoly binform(int d, const std::vector<RatFunc>& coeffs) {
  MovingHomPoly Q(1, d);
  for (int k = 0; k <= d; ++k)
    Q.set_coeff(MultiIndex(std::vector<int>{d - k, k}), coeffs[k]);
  return Q;
}

std::mt19937_64 g_rng(101);

RatFunc random_coeff(bool moving) {
  std::uniform_int_distribution<long> c(-5, 5);
  if (!moving) return RatFunc(c(g_rng));
  return RatFunc(P({c(g_rng), c(g_rng)}));
}

MovingHomPoly random_binform(int d, bool moving) {
  std::vector<RatFunc> coeffs(d + 1);
  bool nonzero = false;
  for (auto& x : coeffs) {
    x = random_coeff(moving);
    nonzero = nonzero || !x.is_zero();
  }
  if (!nonzero) coeffs[0] = RatFunc(1L);
  return binform(d, coeffs);
}

bool equal_up_to_sign(const RatFunc& a, const RatFunc& b) {
  return a == b || a == RatFunc() - b;
}

} // namespace

TEST_CASE("macaulay resultant: coordinate forms give 1") {
  for (int n = 1; n <= 3; ++n) {
    std::vector<MovingHomPoly> coords;
    for (int j = 0; j <= n; ++j)
      coords.push_back(
          MovingHomPoly::monomial(n, MultiIndex::unit(n + 1, j), RatFunc(1L)));
    CHECK(macaulay_resultant(coords) == RatFunc(1L));
  }
}

TEST_CASE("macaulay resultant: linear forms equal the coefficient determinant") {
  std::uniform_int_distribution<long> c(-5, 5);
  for (int n = 1; n <= 3; ++n) {
    for (int it = 0; it < 10; ++it) {
      std::vector<MovingHomPoly> forms;
      std::vector<std::vector<RatFunc>> matrix(n + 1, std::vector<RatFunc>(n + 1));
      for (int j = 0; j <= n; ++j) {
        std::vector<RatFunc> row(n + 1);
        bool nonzero = false;
        for (int k = 0; k <= n; ++k) {
          row[k] = RatFunc(c(g_rng));
          nonzero = nonzero || !row[k].is_zero();
        }
        if (!nonzero) row[j] = RatFunc(1L);
        matrix[j] = row;
        forms.push_back(MovingHomPoly::linear_form(row));
      }
      CHECK(macaulay_resultant(forms) == det_field(matrix));
    }
  }
}

TEST_CASE("macaulay resultant matches the Sylvester oracle up to sign (n=1)") {
  for (int d = 1; d <= 3; ++d) {
    for (int it = 0; it < 12; ++it) {
      MovingHomPoly Q0 = random_binform(d, it % 2 == 0);
      MovingHomPoly Q1 = random_binform(d, it % 3 == 0);
      std::vector<MovingHomPoly> fam{Q0, Q1};
      RatFunc mac = macaulay_resultant(fam);
      RatFunc syl = sylvester_resultant(coeffs_of(Q0), coeffs_of(Q1));
      CHECK(equal_up_to_sign(mac, syl));
    }
  }
}

TEST_CASE("multiplicativity at n=1 against the Sylvester oracle") {
  for (int it = 0; it < 10; ++it) {
    MovingHomPoly Q0 = random_binform(2, it % 2 == 0);
    MovingHomPoly L1 = random_binform(1, false);
    MovingHomPoly L2 = random_binform(1, it % 2 == 1);
    std::vector<MovingHomPoly> fam{Q0, L1 * L2};
    RatFunc lhs = macaulay_resultant(fam);
    RatFunc rhs = sylvester_resultant(coeffs_of(Q0), coeffs_of(L1)) *
                  sylvester_resultant(coeffs_of(Q0), coeffs_of(L2));
    CHECK(equal_up_to_sign(lhs, rhs));
  }
}

TEST_CASE("permuted Fermat triggers the specialization fallback and gives a unit") {
  // Q = (x_1^2, x_2^2, x_0^2): both Macaulay determinants vanish identically
  std::vector<MovingHomPoly> fam{
      MovingHomPoly::monomial(2, MI({0, 2, 0}), RatFunc(1L)),
      MovingHomPoly::monomial(2, MI({0, 0, 2}), RatFunc(1L)),
      MovingHomPoly::monomial(2, MI({2, 0, 0}), RatFunc(1L))};
  MacaulayStructure st = macaulay_structure(2, 2);
  Mat<RatFunc> M = macaulay_matrix(fam, st);
  Mat<RatFunc> minor(static_cast<int>(st.nonreduced.size()),
                     static_cast<int>(st.nonreduced.size()));
  for (size_t i = 0; i < st.nonreduced.size(); ++i)
    for (size_t j = 0; j < st.nonreduced.size(); ++j)
      minor.at(static_cast<int>(i), static_cast<int>(j)) =
          M.at(st.nonreduced[i], st.nonreduced[j]);
  CHECK(det_ratfunc(minor).is_zero()); // the quotient convention is 0/0 here
  RatFunc R = macaulay_resultant(fam);
  CHECK(!R.is_zero());
  CHECK(equal_up_to_sign(R, RatFunc(1L)));
}

TEST_CASE("planted common zeros force a vanishing frozen resultant") {
  std::uniform_int_distribution<long> c(-4, 4);
  int planted_checked = 0;
  for (int it = 0; it < 25; ++it) {
    int n = 1 + (it % 2);
    int d = 1 + (it % 2);
    Rat z0(it % 5);
    std::vector<MovingHomPoly> fam;
    for (int j = 0; j <= n; ++j) {
      MovingHomPoly Q(n, d);
      for (const auto& I : enumerate_index_set(n, d)) Q.set_coeff(I, RatFunc(c(g_rng)));
      // plant the all-ones projective zero at z = z0: subtract
      // total * (1 + gamma_j (z - z0)) from the x_0^d coefficient
      GaussQ total;
      for (const auto& [I, cf] : Q.coeffs()) total += cf.num().coeff(0);
      Poly shift = Poly::from_coeffs({GaussQ(-z0), GaussQ(1L)});
      RatFunc corr =
          RatFunc(total) * (RatFunc(1L) + RatFunc(shift) * RatFunc((it + j) % 3 + 1L));
      MultiIndex x0d = MultiIndex::unit(n + 1, 0, d);
      Q.set_coeff(x0d, Q.coeff(x0d) - corr);
      fam.push_back(Q);
    }
    bool degenerate = false;
    for (const auto& Q : fam) degenerate = degenerate || Q.is_zero();
    if (degenerate) continue;
    RatFunc R = macaulay_resultant(fam);
    if (R.is_zero()) {
      ++planted_checked; // vanishes everywhere, in particular at z0
      continue;
    }
    GaussQ frozen = R.num().eval(GaussQ(z0)) / R.den().eval(GaussQ(z0));
    CHECK(frozen.is_zero());
    ++planted_checked;
  }
  CHECK(planted_checked >= 23);

  int generic_nonzero = 0;
  for (int it = 0; it < 25; ++it) {
    std::vector<MovingHomPoly> fam{random_binform(2, false), random_binform(2, false)};
    if (!macaulay_resultant(fam).is_zero()) ++generic_nonzero;
  }
  CHECK(generic_nonzero >= 24); // random collisions are possible but rare
}

TEST_CASE("nss certificate spec examples") {
  // coordinate forms, d = 1: s = 1, b = identity
  std::vector<MovingHomPoly> coords;
  for (int j = 0; j <= 2; ++j)
    coords.push_back(MovingHomPoly::monomial(2, MultiIndex::unit(3, j), RatFunc(1L)));
  NssCertificate cert = nss_certificate(coords);
  CHECK(cert.s == 1);
  CHECK(cert.R == RatFunc(1L));
  CHECK(verify_certificate(cert, coords));
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j <= 2; ++j)
      CHECK(cert.b[i][j].is_zero() == (i != j));

  // n = 1: x_0^2, x_1^2 -> s = 2, R = +-1, diagonal b
  std::vector<MovingHomPoly> squares{
      MovingHomPoly::monomial(1, MI({2, 0}), RatFunc(1L)),
      MovingHomPoly::monomial(1, MI({0, 2}), RatFunc(1L))};
  NssCertificate c2 = nss_certificate(squares);
  CHECK(c2.s == 2);
  CHECK(equal_up_to_sign(c2.R, RatFunc(1L)));
  CHECK(verify_certificate(c2, squares));

  // n = 1: x_0 + x_1, x_0 - x_1: exact identity at minimal s
  MovingHomPoly p(1, 1), m(1, 1);
  p.set_coeff(MI({1, 0}), RatFunc(1L));
  p.set_coeff(MI({0, 1}), RatFunc(1L));
  m.set_coeff(MI({1, 0}), RatFunc(1L));
  m.set_coeff(MI({0, 1}), RatFunc(-1L));
  std::vector<MovingHomPoly> pm{p, m};
  NssCertificate c3 = nss_certificate(pm);
  CHECK(c3.s == 1);
  CHECK(verify_certificate(c3, pm));
}

TEST_CASE("certificate undefined when the resultant vanishes identically") {
  MovingHomPoly a(1, 1), b(1, 1);
  a.set_coeff(MI({1, 0}), RatFunc(1L));
  a.set_coeff(MI({0, 1}), RatFunc(-1L));
  b.set_coeff(MI({1, 0}), RatFunc(2L));
  b.set_coeff(MI({0, 1}), RatFunc(-2L));
  std::vector<MovingHomPoly> fam{a, b};
  CHECK_THROWS_AS(nss_certificate(fam), Error);
}

TEST_CASE("random certificates verify exactly and specialize along curves") {
  std::uniform_int_distribution<long> c(-3, 3);
  int done = 0;
  for (int it = 0; it < 40 && done < 6; ++it) {
    int n = 1 + (it % 2);
    int d = 1 + (it % 2);
    std::vector<MovingHomPoly> fam;
    for (int j = 0; j <= n; ++j) {
      MovingHomPoly Q(n, d);
      for (const auto& I : enumerate_index_set(n, d)) {
        RatFunc coeff = (it % 3 == 0) ? RatFunc(P({c(g_rng), c(g_rng)}))
                                      : RatFunc(c(g_rng));
        Q.set_coeff(I, coeff);
      }
      if (Q.is_zero()) Q.set_coeff(MultiIndex::unit(n + 1, j, d), RatFunc(1L));
      fam.push_back(Q);
    }
    RatFunc R = macaulay_resultant(fam);
    if (R.is_zero()) continue;
    NssCertificate cert = nss_certificate(fam);
    CHECK(verify_certificate(cert, fam));
    // curve-specialized identity f_i^s R(z) = sum_j b_ij(z, f) Q_j(f)(z)
    PolyCurve f;
    f.n = n;
    for (int k = 0; k <= n; ++k) f.comps.push_back(P({c(g_rng), 1}));
    for (int i = 0; i <= n; ++i) {
      RatFunc lhs = RatFunc(f.comps[i].pow(static_cast<unsigned>(cert.s))) * cert.R;
      RatFunc rhs;
      for (int j = 0; j <= n; ++j) {
        if (cert.b[i][j].is_zero()) continue;
        rhs += compose_exact(cert.b[i][j], f) * compose_exact(fam[j], f);
      }
      CHECK(lhs == rhs);
    }
    ++done;
  }
  CHECK(done == 6);
}

TEST_CASE("admissible spec examples and permutation invariance") {
  // Fermat forms are admissible
  for (int n = 1; n <= 2; ++n) {
    std::vector<MovingHomPoly> fermat;
    for (int j = 0; j <= n; ++j)
      fermat.push_back(MovingHomPoly::monomial(n, MultiIndex::unit(n + 1, j, 2),
                                               RatFunc(1L)));
    AdmissibilityReport rep = admissible(fermat, n);
    CHECK(rep.admissible);
  }
  // a proportional pair fails with the pair reported
  MovingHomPoly a(1, 1), b(1, 1), x0(1, 1);
  a.set_coeff(MI({1, 0}), RatFunc(1L));
  a.set_coeff(MI({0, 1}), RatFunc(-1L));
  b.set_coeff(MI({1, 0}), RatFunc(2L));
  b.set_coeff(MI({0, 1}), RatFunc(-2L));
  x0.set_coeff(MI({1, 0}), RatFunc(1L));
  std::vector<MovingHomPoly> fam{a, b, x0};
  AdmissibilityReport rep = admissible(fam, 1);
  CHECK(!rep.admissible);
  REQUIRE(rep.failing_subset.has_value());
  CHECK(*rep.failing_subset == std::vector<int>{0, 1});
  // permutation invariance of the verdict
  std::vector<MovingHomPoly> perm{x0, b, a};
  CHECK(admissible(perm, 1).admissible == rep.admissible);
  // n = 2, q = 4: coordinate forms plus x_0 + x_1 + x_2
  std::vector<MovingHomPoly> four;
  for (int j = 0; j <= 2; ++j)
    four.push_back(MovingHomPoly::monomial(2, MultiIndex::unit(3, j), RatFunc(1L)));
  MovingHomPoly sum(2, 1);
  for (int j = 0; j <= 2; ++j) sum.set_coeff(MultiIndex::unit(3, j), RatFunc(1L));
  four.push_back(sum);
  CHECK(admissible(four, 2).admissible);
}

TEST_CASE("resultant vanishing on common zero divisors") {
  PolyCurve f;
  f.n = 1;
  f.comps = {Poly::one(), Poly::var()};
  // no common zeros: vacuous
  MovingHomPoly x0(1, 1), x1(1, 1);
  x0.set_coeff(MI({1, 0}), RatFunc(1L));
  x1.set_coeff(MI({0, 1}), RatFunc(1L));
  std::vector<MovingHomPoly> coords{x0, x1};
  VanishingReport vac = resultant_vanishing_check(coords, f);
  CHECK(vac.vacuous);
  CHECK(vac.verified);

  // spec instance: Q_0 = x_1 - x_0, Q_1 = x_1^2 - x_0^2 share z = 1
  MovingHomPoly Q0(1, 1), Q1(1, 2);
  Q0.set_coeff(MI({0, 1}), RatFunc(1L));
  Q0.set_coeff(MI({1, 0}), RatFunc(-1L));
  Q1.set_coeff(MI({0, 2}), RatFunc(1L));
  Q1.set_coeff(MI({2, 0}), RatFunc(-1L));
  std::vector<MovingHomPoly> fam{Q0, Q1};
  VanishingReport rep = resultant_vanishing_check(fam, f);
  CHECK(rep.verified);
  REQUIRE(rep.points.size() == 1);
  CHECK(rep.points[0].location.real_mid() == doctest::Approx(1.0));
  CHECK(rep.points[0].common_multiplicity == 1);
  // the equalized family shares a factor, so R vanishes identically here
  CHECK(rep.resultant.is_zero());
}

TEST_CASE("planted moving-target instances: resultant vanishes at the shared zero") {
  std::uniform_int_distribution<long> c(1, 5);
  for (int it = 0; it < 10; ++it) {
    PolyCurve f;
    f.n = 1;
    f.comps = {Poly::one(), Poly::var()};
    long z0 = (it % 4) + 2;
    // moving linear targets through the curve point (1 : z0) at z = z0;
    // gamma = 1 would make the composition vanish identically
    long g1 = c(g_rng) + 1, g2 = g1 + 1 + (it % 3);
    auto make_target = [&](long gamma) {
      MovingHomPoly Q(1, 1);
      Q.set_coeff(MI({0, 1}), RatFunc(1L));
      // coefficient -(z0 + gamma (z - z0)) on x_0
      Poly cpoly = P({-z0 + gamma * z0, -gamma});
      Q.set_coeff(MI({1, 0}), RatFunc(cpoly));
      return Q;
    };
    std::vector<MovingHomPoly> fam{make_target(g1), make_target(g2)};
    VanishingReport rep = resultant_vanishing_check(fam, f);
    CHECK(rep.verified);
    CHECK(!rep.vacuous);
    CHECK(!rep.resultant.is_zero());
    REQUIRE(rep.points.size() >= 1);
    bool found = false;
    for (const auto& pt : rep.points) {
      if (std::abs(pt.location.real_mid() - static_cast<double>(z0)) < 1e-6) {
        found = true;
        CHECK(pt.resultant_order >= 1);
      }
    }
    CHECK(found);
  }
}
