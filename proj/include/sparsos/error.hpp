#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sparsos {

// Failure categories. The CLI maps these onto exit codes, so keep the
// "mathematical" kinds (infeasible, not nonnegative, ...) separate from the
// usage/format kinds.
enum class ErrorKind {
  kInvalidSpec,
  kInvalidParameter,
  kShape,
  kSymmetry,
  kNotReal,
  kNotNonnegative,
  kNotPsd,
  kSparsity,
  kCertificate,
  kInfeasible,
  kInvariance,
  kInvolution,
  kSupport,
  kDivisibility,
  kConsistency,
  kIncompleteMoments,
  kMeasure,
  kMap,
  kExport,
  kFormat,
};

std::string_view to_string(ErrorKind kind);

// True for kinds that report a property of the mathematical input (e.g. a
// negative function) rather than malformed input.
bool is_mathematical(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace sparsos
