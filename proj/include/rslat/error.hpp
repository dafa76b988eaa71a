#pragma once

#include <stdexcept>
#include <string>

namespace rslat {

// Base of all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an operation's inputs was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A dynamic program or enumeration would exceed the configured work cap.
class WorkLimitExceeded : public Error {
 public:
  using Error::Error;
};

// A mathematical property that the code checks at run time did not hold.
class VerificationFailed : public Error {
 public:
  using Error::Error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidArgument(message);
}

}  // namespace rslat
