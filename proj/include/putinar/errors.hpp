#pragma once

#include <stdexcept>
#include <string>

namespace putinar {

enum class ErrorKind {
  DimensionMismatch,
  DegreeOverflow,
  InvalidParameter,
  InvalidConstraint,
  NonArchimedeanDeclared,
  EmptySetSuspected,
  NonPositiveMinimum,
  ApproximationFailure,
  NumericalFailure,
  NotPsd,
  NotNonnegative,
  MinCheckFailed,
  InfeasibleAtLevel,
  CertificateAssemblyMismatch,
  UnsupportedGeneratorForm,
  EmptyA,
  ConfigError,
  IoError,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(std::string(to_string(kind)) + ": " + msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

inline void require(bool cond, ErrorKind kind, const std::string& msg) {
  if (!cond) fail(kind, msg);
}

}  // namespace putinar
