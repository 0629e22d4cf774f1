#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace repzeta {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad argument or malformed textual specification.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Inverse requested for an element of positive valuation.
class NonUnitError : public Error {
 public:
  NonUnitError(std::string what, unsigned valuation)
      : Error(std::move(what)), valuation_(valuation) {}
  unsigned valuation() const noexcept { return valuation_; }

 private:
  unsigned valuation_;
};

class LevelOutOfRange : public Error {
 public:
  using Error::Error;
};

/// A group (or enumeration) would exceed the configured element budget.
class SizeLimitExceeded : public Error {
 public:
  SizeLimitExceeded(std::string what, std::uint64_t projected)
      : Error(std::move(what)), projected_(projected) {}
  std::uint64_t projected() const noexcept { return projected_; }

 private:
  std::uint64_t projected_;
};

class UnknownGroup : public Error {
 public:
  using Error::Error;
};

/// Eigenspace splitting made no progress within the retry budget.
class DegenerateSplitting : public Error {
 public:
  using Error::Error;
};

/// An internal identity failed; indicates a bug, never bad input.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

class NonUniqueMaximum : public Error {
 public:
  using Error::Error;
};

class InvalidRoot : public Error {
 public:
  using Error::Error;
};

class CriterionNotMet : public Error {
 public:
  using Error::Error;
};

}  // namespace repzeta
