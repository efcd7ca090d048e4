#pragma once

#include <stdexcept>
#include <string>

namespace irr {

enum class Errc {
  ParseError,
  TieUnresolved,
  NotPrimitive,
  UnknownPrimitivity,
  WindowExceeded,
  EmptySet,
  NonzeroConstantTerm,
  NotContracting,
  ValuationZero,
  UnknownMarker,
  UnknownName,
  BadParameter,
  XTooSmall,
  NoSignChange,
  TailBoundFailure,
  DegenerateSingularity,
  UnsupportedAlpha,
  TailTooFat,
  DegeneratePhase,
  BasisMismatch,
  IoError,
  InvalidArgument,
  Internal,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::ParseError: return "PARSE_ERROR";
    case Errc::TieUnresolved: return "TIE_UNRESOLVED";
    case Errc::NotPrimitive: return "NOT_PRIMITIVE";
    case Errc::UnknownPrimitivity: return "UNKNOWN_PRIMITIVITY";
    case Errc::WindowExceeded: return "WINDOW_EXCEEDED";
    case Errc::EmptySet: return "EMPTY_SET";
    case Errc::NonzeroConstantTerm: return "NONZERO_CONSTANT_TERM";
    case Errc::NotContracting: return "NOT_CONTRACTING";
    case Errc::ValuationZero: return "VALUATION_ZERO";
    case Errc::UnknownMarker: return "UNKNOWN_MARKER";
    case Errc::UnknownName: return "UNKNOWN_NAME";
    case Errc::BadParameter: return "BAD_PARAMETER";
    case Errc::XTooSmall: return "X_TOO_SMALL";
    case Errc::NoSignChange: return "NO_SIGN_CHANGE";
    case Errc::TailBoundFailure: return "TAIL_BOUND_FAILURE";
    case Errc::DegenerateSingularity: return "DEGENERATE_SINGULARITY";
    case Errc::UnsupportedAlpha: return "UNSUPPORTED_ALPHA";
    case Errc::TailTooFat: return "TAIL_TOO_FAT";
    case Errc::DegeneratePhase: return "DEGENERATE_PHASE";
    case Errc::BasisMismatch: return "BASIS_MISMATCH";
    case Errc::IoError: return "IO_ERROR";
    case Errc::InvalidArgument: return "INVALID_ARGUMENT";
    case Errc::Internal: return "INTERNAL";
  }
  return "INTERNAL";
}

// Process exit status for an error code; 0 and 1 are reserved.
inline int errc_exit_code(Errc c) { return 10 + static_cast<int>(c); }

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace irr
