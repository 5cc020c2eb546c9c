#pragma once

#include <optional>
#include <vector>

#include "mhlab/error.hpp"

namespace mhlab {

// Dense matrix over an exact field (GaussQ, RatFunc): the scalar type needs
// +, -, *, /, is_zero(), default construction to 0 and construction from
// long.  Elimination pivots on the first nonzero entry; no notion of
// magnitude is assumed.
template <class S>
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<S> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  S& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const S& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

template <class S>
S det_gauss(Mat<S> m) {
  if (m.rows != m.cols) throw Error(ErrorKind::Internal, "det of non-square matrix");
  int n = m.rows;
  S det(1L);
  bool negate = false;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!m.at(r, col).is_zero()) { piv = r; break; }
    if (piv < 0) return S();
    if (piv != col) {
      for (int j = col; j < n; ++j) std::swap(m.at(piv, j), m.at(col, j));
      negate = !negate;
    }
    det = det * m.at(col, col);
    S inv_p = S(1L) / m.at(col, col);
    for (int r = col + 1; r < n; ++r) {
      if (m.at(r, col).is_zero()) continue;
      S factor = m.at(r, col) * inv_p;
      for (int j = col; j < n; ++j)
        m.at(r, j) = m.at(r, j) - factor * m.at(col, j);
    }
  }
  if (negate) det = S() - det;
  return det;
}

// Row echelon reduction of [A | B]; returns the pivot column of each row.
template <class S>
std::vector<int> row_reduce(Mat<S>& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int piv = -1;
    for (int r = row; r < m.rows; ++r)
      if (!m.at(r, col).is_zero()) { piv = r; break; }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(row, j));
    S inv_p = S(1L) / m.at(row, col);
    for (int j = col; j < m.cols; ++j) m.at(row, j) = m.at(row, j) * inv_p;
    for (int r = 0; r < m.rows; ++r) {
      if (r == row || m.at(r, col).is_zero()) continue;
      S factor = m.at(r, col);
      for (int j = col; j < m.cols; ++j)
        m.at(r, j) = m.at(r, j) - factor * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

// One solution of A x = b, or nullopt when inconsistent.
template <class S>
std::optional<std::vector<S>> solve_linear(const Mat<S>& A, const std::vector<S>& b) {
  Mat<S> m(A.rows, A.cols + 1);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) m.at(i, j) = A.at(i, j);
    m.at(i, A.cols) = b[i];
  }
  std::vector<int> pivots = row_reduce(m);
  for (size_t r = 0; r < pivots.size(); ++r)
    if (pivots[r] == A.cols) return std::nullopt; // pivot in the rhs column
  std::vector<S> x(A.cols, S());
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = m.at(static_cast<int>(r), A.cols);
  return x;
}

// Basis of the nullspace of A.
template <class S>
std::vector<std::vector<S>> nullspace(const Mat<S>& A) {
  Mat<S> m = A;
  std::vector<int> pivots = row_reduce(m);
  std::vector<bool> is_pivot(A.cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<S>> basis;
  for (int freec = 0; freec < A.cols; ++freec) {
    if (is_pivot[freec]) continue;
    std::vector<S> v(A.cols, S());
    v[freec] = S(1L);
    for (size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = S() - m.at(static_cast<int>(r), freec);
    basis.push_back(std::move(v));
  }
  return basis;
}

} // namespace mhlab
