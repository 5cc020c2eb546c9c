#pragma once

#include <stdexcept>
#include <string>

namespace mhlab {

// Failure taxonomy shared by every module.  Input problems and genuine
// numerical ambiguities are kept apart so the CLI can map them to
// distinct exit codes.
enum class ErrorKind {
  InvalidInput,
  DegenerateInput,
  PoleAtEvaluationPoint,
  CoefficientPole,
  AmbiguousRadius,
  ZeroResolutionFailure,
  PrecisionExhausted,
  CertificateUndefined,
  SamplerExhausted,
  Internal,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

const char* error_kind_name(ErrorKind k);

} // namespace mhlab
