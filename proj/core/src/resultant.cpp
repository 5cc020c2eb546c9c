#include "mhlab/resultant.hpp"

#include <algorithm>

#include "mhlab/divisor.hpp"
#include "mhlab/error.hpp"

namespace mhlab {

MacaulayStructure macaulay_structure(int n, int d) {
  if (n < 1 || d < 1)
    throw Error(ErrorKind::InvalidInput, "Macaulay structure needs n >= 1, d >= 1");
  MacaulayStructure st;
  st.n = n;
  st.d = d;
  st.critical_degree = (n + 1) * (d - 1) + 1;
  st.monomials = enumerate_index_set(n, st.critical_degree);
  st.row_form.reserve(st.monomials.size());
  st.row_multiplier.reserve(st.monomials.size());
  for (size_t r = 0; r < st.monomials.size(); ++r) {
    const MultiIndex& m = st.monomials[r];
    int owner = -1, count = 0;
    for (int i = 0; i <= n; ++i)
      if (m[i] >= d) {
        if (owner < 0) owner = i;
        ++count;
      }
    if (owner < 0)
      throw Error(ErrorKind::Internal, "degree-D monomial with no x_i^d divisor");
    st.row_form.push_back(owner);
    st.row_multiplier.push_back(subtract(m, MultiIndex::unit(n + 1, owner, d)));
    if (count >= 2) st.nonreduced.push_back(static_cast<int>(r));
  }
  return st;
}

namespace {

template <class S, class CoeffFn>
Mat<S> build_macaulay(const MacaulayStructure& st, const CoeffFn& coeff_of) {
  int size = static_cast<int>(st.monomials.size());
  std::map<MultiIndex, int, GradedLexOrder> col_of;
  for (int c = 0; c < size; ++c) col_of.emplace(st.monomials[c], c);
  Mat<S> m(size, size);
  for (int r = 0; r < size; ++r) {
    int j = st.row_form[r];
    const MultiIndex& A = st.row_multiplier[r];
    for (int c = 0; c < size; ++c) {
      const MultiIndex& target = st.monomials[c];
      if (!componentwise_leq(A, target)) continue;
      m.at(r, c) = coeff_of(j, subtract(target, A));
    }
  }
  return m;
}

template <class S>
Mat<S> extract_minor(const Mat<S>& m, const std::vector<int>& idx) {
  Mat<S> out(static_cast<int>(idx.size()), static_cast<int>(idx.size()));
  for (size_t i = 0; i < idx.size(); ++i)
    for (size_t j = 0; j < idx.size(); ++j)
      out.at(static_cast<int>(i), static_cast<int>(j)) = m.at(idx[i], idx[j]);
  return out;
}

void validate_family(std::span<const MovingHomPoly> Qs) {
  if (Qs.empty())
    throw Error(ErrorKind::InvalidInput, "empty form family");
  int n = Qs[0].nvars();
  if (static_cast<int>(Qs.size()) != n + 1)
    throw Error(ErrorKind::InvalidInput, "resultant needs exactly n+1 forms");
  int d = Qs[0].degree();
  for (const auto& Q : Qs) {
    if (Q.nvars() != n)
      throw Error(ErrorKind::InvalidInput, "forms live in different variable counts");
    if (Q.degree() != d)
      throw Error(ErrorKind::InvalidInput,
                  "resultant needs a common degree (equalize degrees first)");
    if (Q.is_zero())
      throw Error(ErrorKind::DegenerateInput, "a form has all coefficients zero");
  }
}

} // namespace

Mat<RatFunc> macaulay_matrix(std::span<const MovingHomPoly> Qs,
                             const MacaulayStructure& st) {
  return build_macaulay<RatFunc>(
      st, [&](int j, const MultiIndex& I) { return Qs[j].coeff(I); });
}

Poly det_bareiss(Mat<Poly> m) {
  int n = m.rows;
  if (n == 0) return Poly::one();
  bool negate = false;
  Poly prev = Poly::one();
  for (int k = 0; k + 1 < n; ++k) {
    int piv = -1;
    for (int r = k; r < n; ++r)
      if (!m.at(r, k).is_zero()) { piv = r; break; }
    if (piv < 0) return Poly();
    if (piv != k) {
      for (int j = k; j < n; ++j) std::swap(m.at(piv, j), m.at(k, j));
      negate = !negate;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j)
        m.at(i, j) =
            exact_div(m.at(k, k) * m.at(i, j) - m.at(i, k) * m.at(k, j), prev);
      m.at(i, k) = Poly();
    }
    prev = m.at(k, k);
  }
  Poly det = m.at(n - 1, n - 1);
  return negate ? -det : det;
}

RatFunc det_ratfunc(const Mat<RatFunc>& m) {
  if (m.rows == 0) return RatFunc(1L);
  Mat<Poly> cleared(m.rows, m.cols);
  Poly scale = Poly::one();
  for (int r = 0; r < m.rows; ++r) {
    Poly row_den = Poly::one();
    for (int c = 0; c < m.cols; ++c) {
      const Poly& den = m.at(r, c).den();
      Poly g = poly_gcd(row_den, den);
      row_den *= exact_div(den, g);
    }
    for (int c = 0; c < m.cols; ++c) {
      const RatFunc& e = m.at(r, c);
      cleared.at(r, c) = e.num() * exact_div(row_den, e.den());
    }
    scale *= row_den;
  }
  return RatFunc(det_bareiss(std::move(cleared)), scale);
}

namespace {

// det(M + uI) / det(M' + uI) evaluated at u = 0 by exact polynomial division;
// sound even when both plain determinants vanish.
GaussQ perturbed_quotient(const Mat<GaussQ>& M, const std::vector<int>& minor_idx) {
  auto with_u = [](const Mat<GaussQ>& a) {
    Mat<Poly> out(a.rows, a.cols);
    for (int i = 0; i < a.rows; ++i)
      for (int j = 0; j < a.cols; ++j) {
        out.at(i, j) = Poly(a.at(i, j));
        if (i == j) out.at(i, j) += Poly::var();
      }
    return out;
  };
  Poly p_full = det_bareiss(with_u(M));
  Poly p_min = det_bareiss(with_u(extract_minor(M, minor_idx)));
  Poly q = exact_div(p_full, p_min);
  return q.coeff(0);
}

RatFunc resultant_by_specialization(std::span<const MovingHomPoly> Qs,
                                    const MacaulayStructure& st) {
  int n = st.n, d = st.d;
  // clear denominators per form; the resultant is d^n-homogeneous in the
  // coefficients of each form, so the scale divides back out exactly
  unsigned long dn = 1;
  for (int k = 0; k < n; ++k) dn *= static_cast<unsigned long>(d);
  std::vector<MovingHomPoly> cleared;
  Poly gamma = Poly::one();
  long degree_bound = 0;
  for (const auto& Q : Qs) {
    Poly den_lcm = Poly::one();
    for (const auto& [I, c] : Q.coeffs()) {
      Poly g = poly_gcd(den_lcm, c.den());
      den_lcm *= exact_div(c.den(), g);
    }
    MovingHomPoly scaled = RatFunc(den_lcm) * Q;
    long t = 0;
    for (const auto& [I, c] : scaled.coeffs()) t = std::max<long>(t, c.num().degree());
    degree_bound += static_cast<long>(dn) * t;
    gamma *= den_lcm.pow(static_cast<unsigned>(dn));
    cleared.push_back(std::move(scaled));
  }
  std::vector<std::pair<GaussQ, GaussQ>> samples;
  for (long k = 0; static_cast<long>(samples.size()) <= degree_bound; ++k) {
    GaussQ z0{Rat(k)};
    Mat<GaussQ> M = build_macaulay<GaussQ>(st, [&](int j, const MultiIndex& I) {
      return cleared[j].coeff(I).num().eval(z0);
    });
    GaussQ value;
    GaussQ det_minor = det_gauss(extract_minor(M, st.nonreduced));
    if (!det_minor.is_zero())
      value = det_gauss(M) / det_minor;
    else
      value = perturbed_quotient(M, st.nonreduced);
    samples.emplace_back(z0, value);
  }
  Poly P = lagrange_interpolate(samples);
  return RatFunc(P, gamma);
}

} // namespace

RatFunc macaulay_resultant(std::span<const MovingHomPoly> Qs) {
  validate_family(Qs);
  int n = Qs[0].nvars(), d = Qs[0].degree();
  MacaulayStructure st = macaulay_structure(n, d);
  Mat<RatFunc> M = macaulay_matrix(Qs, st);
  RatFunc det_minor = det_ratfunc(extract_minor(M, st.nonreduced));
  if (!det_minor.is_zero()) return det_ratfunc(M) / det_minor;
  return resultant_by_specialization(Qs, st);
}

NssCertificate nss_certificate(std::span<const MovingHomPoly> Qs) {
  validate_family(Qs);
  int n = Qs[0].nvars(), d = Qs[0].degree();
  RatFunc R = macaulay_resultant(Qs);
  if (R.is_zero())
    throw Error(ErrorKind::CertificateUndefined,
                "resultant vanishes identically; no certificate exists");
  int cap = (n + 1) * (d - 1) + 1;
  for (int s = d; s <= cap; ++s) {
    std::vector<MultiIndex> mons_s = enumerate_index_set(n, s);
    std::vector<MultiIndex> mons_b = enumerate_index_set(n, s - d);
    std::map<MultiIndex, int, GradedLexOrder> row_of;
    for (size_t r = 0; r < mons_s.size(); ++r)
      row_of.emplace(mons_s[r], static_cast<int>(r));
    int bcount = static_cast<int>(mons_b.size());
    Mat<RatFunc> A(static_cast<int>(mons_s.size()), (n + 1) * bcount);
    for (int j = 0; j <= n; ++j)
      for (int bi = 0; bi < bcount; ++bi)
        for (const auto& [I, c] : Qs[j].coeffs())
          A.at(row_of.at(add(I, mons_b[bi])), j * bcount + bi) = c;
    std::vector<std::vector<RatFunc>> solutions;
    bool all_solved = true;
    for (int i = 0; i <= n && all_solved; ++i) {
      std::vector<RatFunc> rhs(mons_s.size());
      rhs[row_of.at(MultiIndex::unit(n + 1, i, s))] = R;
      auto x = solve_linear(A, rhs);
      if (!x)
        all_solved = false;
      else
        solutions.push_back(std::move(*x));
    }
    if (!all_solved) continue;
    NssCertificate cert;
    cert.s = s;
    cert.R = R;
    cert.b.assign(n + 1, std::vector<MovingHomPoly>(n + 1, MovingHomPoly(n, s - d)));
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j)
        for (int bi = 0; bi < bcount; ++bi) {
          const RatFunc& v = solutions[i][j * bcount + bi];
          if (!v.is_zero()) cert.b[i][j].set_coeff(mons_b[bi], v);
        }
    return cert;
  }
  throw Error(ErrorKind::Internal,
              "no certificate below the Macaulay degree bound (unexpected for "
              "a nonzero resultant)");
}

bool verify_certificate(const NssCertificate& cert,
                        std::span<const MovingHomPoly> Qs) {
  int n = Qs[0].nvars();
  for (int i = 0; i <= n; ++i) {
    MovingHomPoly acc(n, cert.s);
    for (int j = 0; j <= n; ++j) acc = acc + cert.b[i][j] * Qs[j];
    MovingHomPoly expected =
        MovingHomPoly::monomial(n, MultiIndex::unit(n + 1, i, cert.s), cert.R);
    if (!(acc == expected)) return false;
  }
  return true;
}

AdmissibilityReport admissible(std::span<const MovingHomPoly> Qs, int n) {
  int q = static_cast<int>(Qs.size());
  if (q < n + 1)
    throw Error(ErrorKind::InvalidInput, "admissibility needs q >= n+1 forms");
  AdmissibilityReport report;
  report.admissible = true;
  std::vector<int> subset(n + 1);
  for (int k = 0; k <= n; ++k) subset[k] = k;
  while (true) {
    std::vector<MovingHomPoly> family;
    for (int idx : subset) family.push_back(Qs[idx]);
    std::vector<MovingHomPoly> equalized = raise_to_common_degree(family);
    RatFunc R = macaulay_resultant(equalized);
    if (R.is_zero() && report.admissible) {
      report.admissible = false;
      report.failing_subset = subset;
    }
    report.subset_resultants.emplace_back(subset, std::move(R));
    // next combination
    int pos = n;
    while (pos >= 0 && subset[pos] == q - (n + 1) + pos) --pos;
    if (pos < 0) break;
    ++subset[pos];
    for (int k = pos + 1; k <= n; ++k) subset[k] = subset[k - 1] + 1;
  }
  return report;
}

VanishingReport resultant_vanishing_check(std::span<const MovingHomPoly> Qs,
                                          const PolyCurve& f) {
  if (static_cast<int>(Qs.size()) != f.n + 1)
    throw Error(ErrorKind::InvalidInput, "vanishing check needs n+1 forms");
  VanishingReport report;
  std::vector<MovingHomPoly> equalized = raise_to_common_degree(Qs);
  report.resultant = macaulay_resultant(equalized);

  std::vector<Poly> numerators;
  for (const auto& Q : Qs) {
    RatFunc comp = compose_exact(Q, f);
    if (comp.is_zero())
      throw Error(ErrorKind::DegenerateInput,
                  "a composition Q_j(f) vanishes identically");
    numerators.push_back(comp.num());
  }
  Poly g;
  for (const auto& num : numerators) g = poly_gcd(g, num);
  if (g.degree() < 1) {
    report.vacuous = true;
    report.verified = true;
    return report;
  }
  Poly radical = squarefree_part(g);
  bool res_zero = report.resultant.is_zero();
  report.verified = res_zero || divides(radical, report.resultant.num());

  std::vector<Poly> inputs = numerators;
  if (!res_zero) inputs.push_back(report.resultant.num());
  PointSystem ps(inputs);
  for (const auto& pt : ps.points()) {
    int common = ps.order_at_point(0, pt);
    for (size_t j = 1; j < numerators.size(); ++j)
      common = std::min(common, ps.order_at_point(static_cast<int>(j), pt));
    if (common < 1) continue;
    VanishingPoint vp;
    vp.location = pt.location;
    vp.common_multiplicity = common;
    vp.resultant_order =
        res_zero ? -1 : ps.order_at_point(static_cast<int>(numerators.size()), pt);
    report.points.push_back(vp);
  }
  return report;
}

} // namespace mhlab
