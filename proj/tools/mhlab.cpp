// Command-line front end: parses an instance document and dispatches one of
// the analysis subcommands.  Exit codes: 0 success / consistent verdict,
// 1 reported hypothesis or inequality failure, 2 input error, 3 numerical
// ambiguity.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mhlab/report.hpp"

namespace {

struct Overrides {
  std::optional<long> p;
  std::optional<std::string> variant;
  std::optional<bool> fixed_targets;
  std::optional<long> precision;
  std::optional<unsigned long long> seed;
  std::optional<double> rmax;
};

void apply(const Overrides& o, mhlab::InstanceDocument& doc) {
  if (o.p) doc.params.p = static_cast<int>(*o.p);
  if (o.variant) doc.params.variant = (*o.variant)[0];
  if (o.fixed_targets) doc.params.fixed_targets = *o.fixed_targets;
  if (o.precision) doc.params.precision = *o.precision;
  if (o.seed) doc.params.seed = *o.seed;
  if (o.rmax) doc.params.rmax = *o.rmax;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"moving-hypersurface value distribution laboratory"};
  app.require_subcommand(1);

  std::string instance_path;
  Overrides ov;
  mhlab::RunOptions run_opts;

  const std::vector<std::string> names = {
      "constants",  "resultant",         "certificate", "admissible",
      "counting",   "characteristic",    "fmt-check",   "smt-probe",
      "sample-hyperplanes", "uniqueness"};
  for (const auto& name : names) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("instance", instance_path, "instance document")->required();
    sub->add_option("--trace", run_opts.trace_prefix,
                    "write CSV traces with this path prefix");
    sub->add_option("--p", ov.p, "derivative matching level");
    sub->add_option("--variant", ov.variant, "theorem variant (a|b)")
        ->check(CLI::IsMember({"a", "b"}));
    sub->add_option("--fixed-targets", ov.fixed_targets,
                    "treat targets as fixed (t = 1)");
    sub->add_option("--precision", ov.precision, "working precision bits");
    sub->add_option("--seed", ov.seed, "sampler seed");
    sub->add_option("--rmax", ov.rmax, "zero localization radius");
  }

  CLI11_PARSE(app, argc, argv);
  CLI::App* sub = app.get_subcommands().front();

  mhlab::InstanceDocument doc;
  try {
    doc = mhlab::parse_instance_file(instance_path);
  } catch (const mhlab::Error& e) {
    std::cerr << "error [" << mhlab::error_kind_name(e.kind()) << "]: " << e.what()
              << "\n";
    return 2;
  }
  apply(ov, doc);
  return mhlab::run_command(sub->get_name(), doc, run_opts, std::cout);
}
