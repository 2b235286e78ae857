#pragma once

#include <stdexcept>
#include <string>

namespace magnus {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operands live in incompatible spaces (shape or truncation order).
class DimensionMismatch : public Error {
public:
  using Error::Error;
};

class TruncationMismatch : public Error {
public:
  using Error::Error;
};

/// A series operation was given a constant term outside its domain
/// (exp needs zero, log needs the identity).
class ConstantTermError : public Error {
public:
  using Error::Error;
};

class SingularError : public Error {
public:
  using Error::Error;
};

class SiteOutOfRange : public Error {
public:
  using Error::Error;
};

class InvalidSlots : public Error {
public:
  using Error::Error;
};

/// A Rota-Baxter operator was applied to a carrier of the wrong kind.
class KindMismatch : public Error {
public:
  using Error::Error;
};

class Unsupported : public Error {
public:
  using Error::Error;
};

class DimensionBudgetExceeded : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

} // namespace magnus
