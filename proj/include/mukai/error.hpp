#pragma once

#include <stdexcept>
#include <string>

namespace mukai {

enum class Errc {
  DimensionMismatch,
  ContextMismatch,
  DivisionByZero,
  ParseError,
  NotNilpotent,
  NotSymmetric,
  Degenerate,
  IsotropicVector,
  NotIsometry,
  SpaceMismatch,
  NotInDegreeZero,
  NotDegreeTwo,
  NoHardLefschetz,
  InternalInconsistency,
  DegreeTooLow,
  DegreeMismatch,
  TooLarge,
  NotInduced,
  BadDelta,
  NoUnimodularPlaneFound,
  PreconditionViolated,
  ReductionFailed,
  NSLacksWitness,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::ContextMismatch: return "ContextMismatch";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::ParseError: return "ParseError";
    case Errc::NotNilpotent: return "NotNilpotent";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::Degenerate: return "Degenerate";
    case Errc::IsotropicVector: return "IsotropicVector";
    case Errc::NotIsometry: return "NotIsometry";
    case Errc::SpaceMismatch: return "SpaceMismatch";
    case Errc::NotInDegreeZero: return "NotInDegreeZero";
    case Errc::NotDegreeTwo: return "NotDegreeTwo";
    case Errc::NoHardLefschetz: return "NoHardLefschetz";
    case Errc::InternalInconsistency: return "InternalInconsistency";
    case Errc::DegreeTooLow: return "DegreeTooLow";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::TooLarge: return "TooLarge";
    case Errc::NotInduced: return "NotInduced";
    case Errc::BadDelta: return "BadDelta";
    case Errc::NoUnimodularPlaneFound: return "NoUnimodularPlaneFound";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::ReductionFailed: return "ReductionFailed";
    case Errc::NSLacksWitness: return "NSLacksWitness";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace mukai
