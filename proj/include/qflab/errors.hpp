#pragma once

#include <stdexcept>
#include <string>

namespace qflab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class MissingParameter : public Error {
 public:
  explicit MissingParameter(const std::string& name)
      : Error("missing value for parameter '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class ParameterSpaceMismatch : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class ShiftOutOfRange : public Error {
 public:
  using Error::Error;
};

class NonNilpotent : public Error {
 public:
  using Error::Error;
};

class InvalidParameters : public Error {
 public:
  using Error::Error;
};

class UnknownFamily : public Error {
 public:
  using Error::Error;
};

}  // namespace qflab
