#pragma once

#include <limits>
#include <string>
#include <vector>

#include "mhlab/expsum.hpp"
#include "mhlab/zerofind.hpp"

namespace mhlab {

struct DivisorPoint {
  CBall location;
  int multiplicity = 1;
  double mod_lo = 0.0; // certified interval for |z|
  double mod_hi = 0.0;
};

// Finite multiset of zeros with multiplicities on a disk.  Exact sources
// carry every zero (disk_radius = infinity); transcendental sources carry
// the zeros located in |z| <= disk_radius.
struct Divisor {
  std::vector<DivisorPoint> points;
  std::string source;
  double disk_radius = std::numeric_limits<double>::infinity();

  long total_multiplicity() const;
};

// Zero divisor of a meromorphic function model.  Exact model: squarefree
// factorization for multiplicities plus certified isolation.  Transcendental
// model: argument-principle subdivision in |z| <= R_max.
Divisor zero_divisor(const MeroFunction& h, double R_max,
                     const ZeroFindOptions& opts = {});

// Pairwise-coprime squarefree monic basis refining the squarefree parts of
// the inputs.
std::vector<Poly> gcd_free_basis(const std::vector<Poly>& inputs);

// Exact analysis of the common zero structure of a family of nonzero
// polynomials: a coprime basis refined against every Yun layer (so each
// input has a well-defined vanishing order along each basis factor) plus
// certified locations of all basis roots.
class PointSystem {
public:
  struct Point {
    CBall location;
    int basis_index;
  };

  PointSystem(std::vector<Poly> inputs, const ZeroFindOptions& opts = {});

  const std::vector<Poly>& basis() const { return basis_; }
  const std::vector<Point>& points() const { return points_; }
  int input_count() const { return static_cast<int>(orders_.size()); }
  // Exact vanishing order of input i at every root of basis()[k].
  int order(int input, int basis_index) const {
    return orders_[input][basis_index];
  }
  int order_at_point(int input, const Point& pt) const {
    return orders_[input][pt.basis_index];
  }

private:
  std::vector<Poly> basis_;
  std::vector<std::vector<int>> orders_;
  std::vector<Point> points_;
};

} // namespace mhlab
