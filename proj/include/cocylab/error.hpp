#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cocylab {

enum class ErrorKind {
  IndexOutOfRange,
  KindMismatch,
  EmptyPattern,
  BadModuli,
  PatternSelfOverlaps,
  BadIndices,
  NotNormalized,
  BadQuotient,
  NotHomomorphism,
  NotUnimodular,
  NotIntegral,
  ZeroArgument,
  BadModulus,
  BadSpacing,
  UnsupportedRank,
  GroupMismatch,
  BadGenerator,
  UnsupportedAction,
  NotSymmetric,
  CapExceeded,
  BallTooLarge,
  ParseError,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::KindMismatch: return "KindMismatch";
    case ErrorKind::EmptyPattern: return "EmptyPattern";
    case ErrorKind::BadModuli: return "BadModuli";
    case ErrorKind::PatternSelfOverlaps: return "PatternSelfOverlaps";
    case ErrorKind::BadIndices: return "BadIndices";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::BadQuotient: return "BadQuotient";
    case ErrorKind::NotHomomorphism: return "NotHomomorphism";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::NotIntegral: return "NotIntegral";
    case ErrorKind::ZeroArgument: return "ZeroArgument";
    case ErrorKind::BadModulus: return "BadModulus";
    case ErrorKind::BadSpacing: return "BadSpacing";
    case ErrorKind::UnsupportedRank: return "UnsupportedRank";
    case ErrorKind::GroupMismatch: return "GroupMismatch";
    case ErrorKind::BadGenerator: return "BadGenerator";
    case ErrorKind::UnsupportedAction: return "UnsupportedAction";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::BallTooLarge: return "BallTooLarge";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failures additionally record the byte offset of the offending token.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : Error(ErrorKind::ParseError, what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace cocylab
