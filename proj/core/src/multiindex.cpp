#include "mhlab/multiindex.hpp"

#include <numeric>

#include "mhlab/error.hpp"

namespace mhlab {

MultiIndex MultiIndex::unit(int nvars, int pos, int power) {
  std::vector<int> e(nvars, 0);
  e[pos] = power;
  return MultiIndex(std::move(e));
}

int MultiIndex::weight() const {
  return std::accumulate(e_.begin(), e_.end(), 0);
}

bool GradedLexOrder::operator()(const MultiIndex& a, const MultiIndex& b) const {
  int wa = a.weight(), wb = b.weight();
  if (wa != wb) return wa < wb;
  // lexicographically larger exponent vectors come first
  return a.entries() > b.entries();
}

MultiIndex add(const MultiIndex& a, const MultiIndex& b) {
  std::vector<int> e(a.entries());
  for (int k = 0; k < b.size(); ++k) e[k] += b[k];
  return MultiIndex(std::move(e));
}

bool componentwise_leq(const MultiIndex& a, const MultiIndex& b) {
  for (int k = 0; k < a.size(); ++k)
    if (a[k] > b[k]) return false;
  return true;
}

MultiIndex subtract(const MultiIndex& a, const MultiIndex& b) {
  std::vector<int> e(a.entries());
  for (int k = 0; k < b.size(); ++k) {
    e[k] -= b[k];
    if (e[k] < 0)
      throw Error(ErrorKind::Internal, "multi-index subtraction underflow");
  }
  return MultiIndex(std::move(e));
}

namespace {

void enumerate_rec(int vars_left, int weight_left, std::vector<int>& acc,
                   std::vector<MultiIndex>& out) {
  if (vars_left == 1) {
    acc.push_back(weight_left);
    out.emplace_back(acc);
    acc.pop_back();
    return;
  }
  for (int k = weight_left; k >= 0; --k) {
    acc.push_back(k);
    enumerate_rec(vars_left - 1, weight_left - k, acc, out);
    acc.pop_back();
  }
}

} // namespace

std::vector<MultiIndex> enumerate_index_set(int n, int d) {
  if (n < 1 || d < 0)
    throw Error(ErrorKind::InvalidInput, "index set requires n >= 1, d >= 0");
  std::vector<MultiIndex> out;
  std::vector<int> acc;
  enumerate_rec(n + 1, d, acc, out);
  return out;
}

Int binomial(unsigned long a, unsigned long b) {
  Int out;
  mpz_bin_uiui(out.get_mpz_t(), a, b);
  return out;
}

std::string to_string(const MultiIndex& I) {
  std::string out = "(";
  for (int k = 0; k < I.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(I[k]);
  }
  out += ")";
  return out;
}

} // namespace mhlab
