#pragma once

#include <stdexcept>
#include <string>

namespace qcluster {

enum class ErrorKind {
    InvalidInstance,
    InvalidScalar,
    InvalidPoint,
    InvalidPair,
    InvalidK,
    InvalidPermutation,
    Shape,
    OracleSize,
    ModelConstruction,
    Precondition,
    Input,
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidInstance: return "invalid-instance";
        case ErrorKind::InvalidScalar: return "invalid-scalar";
        case ErrorKind::InvalidPoint: return "invalid-point";
        case ErrorKind::InvalidPair: return "invalid-pair";
        case ErrorKind::InvalidK: return "invalid-k";
        case ErrorKind::InvalidPermutation: return "invalid-permutation";
        case ErrorKind::Shape: return "shape";
        case ErrorKind::OracleSize: return "oracle-size";
        case ErrorKind::ModelConstruction: return "model-construction";
        case ErrorKind::Precondition: return "precondition";
        case ErrorKind::Input: return "input";
    }
    return "unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map them to exit codes.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message)
      , kind_{kind} {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

namespace detail {

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

inline void require(bool condition, ErrorKind kind, const std::string& message) {
    if (!condition) {
        fail(kind, message);
    }
}

}  // namespace detail
}  // namespace qcluster
