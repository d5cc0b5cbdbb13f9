#pragma once

#include <stdexcept>
#include <string>

namespace qcrystal {

enum class ErrorKind {
  InvalidDatum,
  InvalidArgument,
  NotRegularAtZero,
  SpanDeficient,
  NotInLattice,
  NotDominant,
  BarDomain,
  DegreeBudgetExceeded,
  NonUniqueSolution,
  ReconstructionFailed,
  DepthInsufficient,
  WellDefinednessViolation,
  ParseError,
};

const char* to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so callers (and the CLI)
// can map it to a structured message without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qcrystal
