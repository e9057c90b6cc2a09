#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ecnoc {

enum class ErrorCode {
  InvalidParameter,
  FieldMismatch,
  DivisionByZero,
  NotOnCurve,
  SystemMismatch,
  OracleBoundExceeded,
  EmptyTrace,
  MalformedGraph,
  OutOfMesh,
  TooManyCores,
  MissingCoreRole,
  ParseError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ecnoc
