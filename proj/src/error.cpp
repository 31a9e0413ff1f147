#include "sparsos/error.hpp"

namespace sparsos {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidSpec: return "invalid-spec";
    case ErrorKind::kInvalidParameter: return "invalid-parameter";
    case ErrorKind::kShape: return "shape";
    case ErrorKind::kSymmetry: return "symmetry";
    case ErrorKind::kNotReal: return "not-real";
    case ErrorKind::kNotNonnegative: return "not-nonnegative";
    case ErrorKind::kNotPsd: return "not-psd";
    case ErrorKind::kSparsity: return "sparsity";
    case ErrorKind::kCertificate: return "certificate";
    case ErrorKind::kInfeasible: return "infeasible";
    case ErrorKind::kInvariance: return "invariance";
    case ErrorKind::kInvolution: return "involution";
    case ErrorKind::kSupport: return "support";
    case ErrorKind::kDivisibility: return "divisibility";
    case ErrorKind::kConsistency: return "consistency";
    case ErrorKind::kIncompleteMoments: return "incomplete-y";
    case ErrorKind::kMeasure: return "measure";
    case ErrorKind::kMap: return "map";
    case ErrorKind::kExport: return "export";
    case ErrorKind::kFormat: return "format";
  }
  return "unknown";
}

bool is_mathematical(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNotNonnegative:
    case ErrorKind::kNotPsd:
    case ErrorKind::kInfeasible:
    case ErrorKind::kDivisibility:
    case ErrorKind::kCertificate:
    case ErrorKind::kSupport:
    case ErrorKind::kNotReal:
      return true;
    default:
      return false;
  }
}

void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, std::string(to_string(kind)) + ": " + message);
}

}  // namespace sparsos
