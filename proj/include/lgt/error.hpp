#pragma once

#include <stdexcept>
#include <string>

namespace lgt {

// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidGraph : public Error {
 public:
  using Error::Error;
};

class InvalidColor : public Error {
 public:
  using Error::Error;
};

class NotInvertible : public Error {
 public:
  using Error::Error;
};

class NotASignedPermutation : public Error {
 public:
  NotASignedPermutation(int color, const std::string& what)
      : Error(what), color_(color) {}
  int color() const noexcept { return color_; }

 private:
  int color_;
};

class IntertwiningViolated : public Error {
 public:
  using Error::Error;
};

// Raised when internally derived identities disagree. Never expected on
// valid input.
class ConsistencyViolated : public Error {
 public:
  using Error::Error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class WitnessSearchExhausted : public Error {
 public:
  using Error::Error;
};

class NotTransplantable : public Error {
 public:
  using Error::Error;
};

class MissingWeight : public Error {
 public:
  using Error::Error;
};

class ArithmeticOverflow : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace lgt
