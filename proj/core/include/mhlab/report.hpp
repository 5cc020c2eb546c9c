#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "mhlab/instance.hpp"

namespace mhlab {

struct RunOptions {
  std::optional<std::string> trace_prefix; // write CSV traces when set
};

// Executes a subcommand against a parsed instance document, writing the
// human-readable report plus a machine-readable JSON section to `out`.
// Returns the CLI exit code: 0 success / consistent verdict, 1 reported
// hypothesis or inequality failure, 2 input error, 3 numerical ambiguity.
int run_command(const std::string& name, const InstanceDocument& doc,
                const RunOptions& opts, std::ostream& out);

std::string format_double(double v);

} // namespace mhlab
