#pragma once

#include <stdexcept>
#include <string>

namespace expost {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidGame : public Error {
 public:
  using Error::Error;
};

class InvalidBelief : public Error {
 public:
  using Error::Error;
};

/// Raised by the binary-state geometry when the game does not have two states.
class NotBinary : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class OracleTooLarge : public Error {
 public:
  using Error::Error;
};

class NotTradingGame : public Error {
 public:
  using Error::Error;
};

class NoSolution : public Error {
 public:
  using Error::Error;
};

class NotIncreasing : public Error {
 public:
  using Error::Error;
};

class BidOutOfRange : public Error {
 public:
  using Error::Error;
};

class BidMonotonicityViolated : public Error {
 public:
  using Error::Error;
};

class ParamInvariantViolated : public Error {
 public:
  using Error::Error;
};

class ConditionsNotMet : public Error {
 public:
  using Error::Error;
};

}  // namespace expost
