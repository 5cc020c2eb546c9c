#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "mhlab/uniqueness.hpp"

namespace mhlab {

// Parse failure with a 1-based source position.
class ParseError : public Error {
public:
  ParseError(int line, int col, const std::string& msg)
      : Error(ErrorKind::InvalidInput,
              std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

private:
  int line_;
  int col_;
};

struct InstanceParams {
  int p = 1;
  char variant = 'a';
  bool fixed_targets = true;
  prec_t precision = kDefaultPrec;
  std::uint64_t seed = 1;
  double rmax = 6.0;
  double quad_tol = 1e-8;
  std::optional<std::vector<double>> radii;
  std::optional<int> q;                    // constants-only documents
  std::optional<std::vector<int>> degrees; // ditto
  std::optional<Int> truncation;           // L for the counting subcommand
  int nondeg_degree_max = 3;
  int nondeg_deg_z_max = 2;
};

struct InstanceDocument {
  int version = 1;
  int n = 1;
  std::optional<Curve> f;
  std::optional<Curve> g;
  TargetSet targets;
  InstanceParams params;
};

// Structured-text instance format; see docs/instance-format.md.  Throws
// ParseError with a line:column diagnostic on the first error.
InstanceDocument parse_instance(std::string_view text);
InstanceDocument parse_instance_file(const std::string& path);

// Grammar-level entry points, used by tests and the round-trip property.
GaussQ parse_scalar(std::string_view text);
RatFunc parse_ratfunc(std::string_view text);
ExpPolySum parse_entire(std::string_view text);

} // namespace mhlab
