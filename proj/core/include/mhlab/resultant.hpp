#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "mhlab/curve.hpp"
#include "mhlab/homogeneous.hpp"
#include "mhlab/linalg.hpp"

namespace mhlab {

// Macaulay layout for n+1 forms of common degree d at the critical degree
// D = (n+1)(d-1)+1.  Rows and columns are labeled by the degree-D monomials;
// the row for monomial m is the coefficient vector of (m / x_i^d) * Q_i with
// i the smallest index such that x_i^d divides m.  Monomials divisible by
// x_i^d for two or more i are "non-reduced" and index the minor whose
// determinant divides out of det(M).
struct MacaulayStructure {
  int n = 0;
  int d = 0;
  int critical_degree = 0;
  std::vector<MultiIndex> monomials;     // canonical order
  std::vector<int> row_form;             // form index i per row/monomial
  std::vector<MultiIndex> row_multiplier; // m / x_i^d
  std::vector<int> nonreduced;           // positions into monomials
};

MacaulayStructure macaulay_structure(int n, int d);
Mat<RatFunc> macaulay_matrix(std::span<const MovingHomPoly> Qs,
                             const MacaulayStructure& st);

// Determinant of a rational-function matrix: rows are cleared to polynomial
// entries, the polynomial determinant is computed fraction-free (Bareiss),
// and the row scales divide back out.
RatFunc det_ratfunc(const Mat<RatFunc>& m);
Poly det_bareiss(Mat<Poly> m);

// Resultant of n+1 moving forms of common degree, normalized by the
// Macaulay quotient det(M)/det(M').  When both determinants vanish
// identically the value is recovered through exact specializations of z
// (each evaluated with the diagonal u-perturbation det(M+uI)/det(M'+uI) at
// u -> 0) and polynomial interpolation.
RatFunc macaulay_resultant(std::span<const MovingHomPoly> Qs);

struct NssCertificate {
  int s = 0;
  RatFunc R;
  // b[i][j] is zero or homogeneous of degree s - d; the identity
  // x_i^s * R = sum_j b[i][j] * Q_j holds exactly for every i.
  std::vector<std::vector<MovingHomPoly>> b;
};

// Minimal s by increasing search, solvable for every i; throws
// CertificateUndefined when the resultant vanishes identically.
NssCertificate nss_certificate(std::span<const MovingHomPoly> Qs);
bool verify_certificate(const NssCertificate& cert,
                        std::span<const MovingHomPoly> Qs);

struct AdmissibilityReport {
  bool admissible = false;
  std::optional<std::vector<int>> failing_subset;
  // resultant per (n+1)-subset, in lexicographic subset order
  std::vector<std::pair<std::vector<int>, RatFunc>> subset_resultants;
};

// Every (n+1)-subset is degree-equalized and its resultant tested against 0.
AdmissibilityReport admissible(std::span<const MovingHomPoly> Qs, int n);

struct VanishingPoint {
  CBall location;
  int common_multiplicity = 0; // min_j ord of Q_j(f)
  int resultant_order = 0;     // ord of the resultant numerator
};

struct VanishingReport {
  bool verified = false;       // radical of the common zeros divides num(R)
  bool vacuous = false;        // no common zeros
  std::vector<VanishingPoint> points;
  RatFunc resultant;
};

// Checks that the resultant of the (degree-equalized) family vanishes at
// every common zero of the compositions Q_j(f); exact curve model only.
VanishingReport resultant_vanishing_check(std::span<const MovingHomPoly> Qs,
                                          const PolyCurve& f);

} // namespace mhlab
