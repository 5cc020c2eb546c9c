#include "mhlab/error.hpp"

namespace mhlab {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::PoleAtEvaluationPoint: return "PoleAtEvaluationPoint";
    case ErrorKind::CoefficientPole: return "CoefficientPole";
    case ErrorKind::AmbiguousRadius: return "AmbiguousRadius";
    case ErrorKind::ZeroResolutionFailure: return "ZeroResolutionFailure";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::CertificateUndefined: return "CertificateUndefined";
    case ErrorKind::SamplerExhausted: return "SamplerExhausted";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

} // namespace mhlab
