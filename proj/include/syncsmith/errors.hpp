#pragma once

#include <stdexcept>
#include <string>

namespace syncsmith {

enum class ErrorCode {
  MalformedGraph,
  UnknownState,
  HorizonTooSmall,
  SizeMismatch,
  SchemaError,
  PartialTable,
  ClockRange,
  Unenumerable,
  PredictionMismatch,
  SizeBudget,
  Internal,
};

const char* error_code_name(ErrorCode code);

// Exit gates map on error codes, so every throw site picks one explicitly.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace syncsmith
