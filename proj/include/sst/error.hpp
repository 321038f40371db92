#pragma once

#include <stdexcept>
#include <string>

namespace sst {

enum class Errc {
  NotSquare,
  EntryOutOfRange,
  SkewViolation,
  DiagonalNotHalf,
  SizeMismatch,
  LevelOutOfRange,
  NotDivisibleBy4,
  NotDivisibleBy3,
  ProbabilitiesDoNotSumToOne,
  UnknownFixture,
  PObsOutOfRange,
  ModeMismatch,
  SvdFailure,
  SOutOfRange,
  NTooSmall,
  NTooLargeForBruteForce,
  EpsOutOfRange,
  NoObservations,
  BadPermutation,
  BadWeightVector,
  ParseError,
  InvalidConfig,
};

// Library-wide exception; carries the error code and, where meaningful, the
// offending (i, j) indices.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg, int i = -1, int j = -1)
      : std::runtime_error(msg), code_(code), i_(i), j_(j) {}

  Errc code() const { return code_; }
  int index_i() const { return i_; }
  int index_j() const { return j_; }

 private:
  Errc code_;
  int i_;
  int j_;
};

}  // namespace sst
