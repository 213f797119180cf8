#include "smc/errors.hpp"

namespace smc {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Dimension: return "DimensionError";
    case ErrorKind::Parameter: return "ParameterError";
    case ErrorKind::Numerics: return "NumericsError";
    case ErrorKind::SingularSurfaceGain: return "SingularSurfaceGain";
    case ErrorKind::Divergence: return "DivergenceError";
    case ErrorKind::Data: return "DataError";
    case ErrorKind::NotReached: return "NotReachedError";
    case ErrorKind::ConfigSyntax: return "ConfigSyntaxError";
    case ErrorKind::ConfigValidation: return "ConfigValidationError";
  }
  return "Error";
}

namespace {

std::string join_failures(const std::vector<std::string>& failures) {
  std::string msg = "invalid configuration:";
  for (const auto& f : failures) {
    msg += "\n  ";
    msg += f;
  }
  return msg;
}

}  // namespace

ConfigValidationError::ConfigValidationError(std::vector<std::string> failures)
    : Error(ErrorKind::ConfigValidation, join_failures(failures)), failures_(std::move(failures)) {}

}  // namespace smc
