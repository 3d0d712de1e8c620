#pragma once

#include <stdexcept>
#include <string>

namespace schur {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

/// Malformed input text (JSON syntax, unknown fields, wrong types).
class ParseError : public Error {
public:
  using Error::Error;
};

/// Well-formed input that violates a structural invariant.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// The operation requires a special group (Z(G) = G').
class NotSpecial : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class Unsupported : public ValidationError {
public:
  using ValidationError::ValidationError;
};

/// Work estimate above the configured guard.
class BudgetExceeded : public Error {
public:
  using Error::Error;
};

} // namespace schur
