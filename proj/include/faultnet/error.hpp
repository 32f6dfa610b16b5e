#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace faultnet {

enum class ErrorKind {
  Config,        // invalid SimConfig / RunConfig / hyperparameters
  Scenario,      // invalid FaultScenario
  Domain,        // argument outside a function's mathematical domain
  Shape,         // dimension mismatch
  Parameter,     // out-of-range algorithm parameter (k, C, learning rate)
  Training,      // dataset unusable for training
  Bounds,        // time index outside the record
  Window,        // record shorter than the feature window
  Coverage,      // a stage class is missing from the corpus
  Compatibility, // bundle / corpus / file version mismatch
  Schema,        // malformed input file
  Label,         // unknown class index or name
  Pipeline,      // untrained or mismatched pipeline models
  Io,            // filesystem failure
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

// CLI exit code for an error kind: 2 config, 3 coverage, 4 compatibility,
// 5 input schema, 1 for everything else.
int exit_code_for(ErrorKind kind) noexcept;

}  // namespace faultnet
