#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace smc {

enum class ErrorKind {
  Dimension,
  Parameter,
  Numerics,
  SingularSurfaceGain,
  Divergence,
  Data,
  NotReached,
  ConfigSyntax,
  ConfigValidation,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define SMC_DEFINE_ERROR(Name, Kind)                                  \
  class Name : public Error {                                         \
   public:                                                            \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
  };

SMC_DEFINE_ERROR(DimensionError, Dimension)
SMC_DEFINE_ERROR(ParameterError, Parameter)
SMC_DEFINE_ERROR(NumericsError, Numerics)
// |ds/dx . b| fell below the invertibility threshold.
SMC_DEFINE_ERROR(SingularSurfaceGain, SingularSurfaceGain)
SMC_DEFINE_ERROR(DataError, Data)
SMC_DEFINE_ERROR(NotReachedError, NotReached)
SMC_DEFINE_ERROR(ConfigSyntaxError, ConfigSyntax)

#undef SMC_DEFINE_ERROR

// Carries every failed field path, not just the first one.
class ConfigValidationError : public Error {
 public:
  explicit ConfigValidationError(std::vector<std::string> failures);
  const std::vector<std::string>& failures() const noexcept { return failures_; }

 private:
  std::vector<std::string> failures_;
};

}  // namespace smc
