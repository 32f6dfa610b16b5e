#include "faultnet/error.hpp"

namespace faultnet {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Config: return "configuration error";
    case ErrorKind::Scenario: return "scenario error";
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::Shape: return "shape error";
    case ErrorKind::Parameter: return "parameter error";
    case ErrorKind::Training: return "training error";
    case ErrorKind::Bounds: return "bounds error";
    case ErrorKind::Window: return "window error";
    case ErrorKind::Coverage: return "coverage error";
    case ErrorKind::Compatibility: return "compatibility error";
    case ErrorKind::Schema: return "schema error";
    case ErrorKind::Label: return "label error";
    case ErrorKind::Pipeline: return "pipeline configuration error";
    case ErrorKind::Io: return "i/o error";
  }
  return "error";
}

void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, std::string(to_string(kind)) + ": " + message);
}

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Config:
    case ErrorKind::Parameter:
    case ErrorKind::Scenario:
      return 2;
    case ErrorKind::Coverage:
      return 3;
    case ErrorKind::Compatibility:
    case ErrorKind::Pipeline:
      return 4;
    case ErrorKind::Schema:
      return 5;
    default:
      return 1;
  }
}

}  // namespace faultnet
