#include "ecnoc/error.hpp"

namespace ecnoc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NotOnCurve: return "NotOnCurve";
    case ErrorCode::SystemMismatch: return "SystemMismatch";
    case ErrorCode::OracleBoundExceeded: return "OracleBoundExceeded";
    case ErrorCode::EmptyTrace: return "EmptyTrace";
    case ErrorCode::MalformedGraph: return "MalformedGraph";
    case ErrorCode::OutOfMesh: return "OutOfMesh";
    case ErrorCode::TooManyCores: return "TooManyCores";
    case ErrorCode::MissingCoreRole: return "MissingCoreRole";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace ecnoc
