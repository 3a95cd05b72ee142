#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace compeq {

enum class ErrorKind {
  Syntax,
  EmptySet,
  ZeroPart,
  OutOfDomain,
  NotSupercritical,
  Periodic,
  CapacityExceeded,
  UndefinedProbability,
  NoCompositions,
  DegenerateVariance,
  InvalidArgument,
};

// Stable identifier used by the CLI and in JSON error payloads.
constexpr std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::ZeroPart: return "ZeroPart";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::NotSupercritical: return "NotSupercritical";
    case ErrorKind::Periodic: return "Periodic";
    case ErrorKind::CapacityExceeded: return "CapacityExceeded";
    case ErrorKind::UndefinedProbability: return "UndefinedProbability";
    case ErrorKind::NoCompositions: return "NoCompositions";
    case ErrorKind::DegenerateVariance: return "DegenerateVariance";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

// Parse failures carry the byte offset into the input.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& expected)
      : Error(ErrorKind::Syntax, "syntax error at position " + std::to_string(position) +
                                     ": expected " + expected),
        position_(position),
        expected_(expected) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

}  // namespace compeq
