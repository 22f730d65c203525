#pragma once

#include <stdexcept>

namespace pkgopt {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

class SingleClassData : public Error {
 public:
  using Error::Error;
};

class NonFiniteFeature : public Error {
 public:
  using Error::Error;
};

/// A product ended up with every package type masked.
class InfeasibleProduct : public Error {
 public:
  using Error::Error;
};

class InfeasibleAssignment : public Error {
 public:
  using Error::Error;
};

class NegativeLambda : public Error {
 public:
  using Error::Error;
};

/// Guard for the exhaustive oracles, which are exponential in product count.
class InstanceTooLarge : public Error {
 public:
  using Error::Error;
};

/// A structural property that the library guarantees was observed to fail;
/// indicates an implementation bug, not bad input.
class PropertyViolation : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace pkgopt
