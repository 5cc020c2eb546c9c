#pragma once

#include <string>
#include <vector>

#include "mhlab/gauss.hpp"

namespace mhlab {

// Exponent vector (i_0, ..., i_n) for monomials x_0^{i_0} ... x_n^{i_n}.
class MultiIndex {
public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> e) : e_(std::move(e)) {}
  static MultiIndex unit(int nvars, int pos, int power = 1);

  int size() const { return static_cast<int>(e_.size()); } // n + 1
  int weight() const;
  int operator[](int k) const { return e_[k]; }
  const std::vector<int>& entries() const { return e_; }

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    return a.e_ == b.e_;
  }
  friend bool operator!=(const MultiIndex& a, const MultiIndex& b) {
    return !(a == b);
  }

private:
  std::vector<int> e_;
};

// Canonical order: by weight, and within a weight lexicographically with
// higher x_0 powers first; matches the enumeration order of index sets so
// map iteration, Macaulay layouts and file formats are bit-stable.
struct GradedLexOrder {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

MultiIndex add(const MultiIndex& a, const MultiIndex& b);
bool componentwise_leq(const MultiIndex& a, const MultiIndex& b);
MultiIndex subtract(const MultiIndex& a, const MultiIndex& b); // requires b <= a

// All (n+1)-entry indices of weight d in canonical order;
// length C(n+d, n).  Requires n >= 1, d >= 0.
std::vector<MultiIndex> enumerate_index_set(int n, int d);

Int binomial(unsigned long a, unsigned long b);

std::string to_string(const MultiIndex& I);

} // namespace mhlab
