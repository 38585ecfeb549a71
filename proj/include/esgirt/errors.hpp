#pragma once

#include <stdexcept>
#include <string>

namespace esgirt {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file (bad CSV/JSON syntax, unparseable date, ...).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Structurally valid input that violates a contract (duplicate ids,
// label outside {0,1}, weight files that do not cover the criteria, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Non-finite or otherwise out-of-domain numeric argument.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Estimation cannot proceed or failed (disconnected data, everything
// extreme, non-convergence surfaced by callers).
class EstimationError : public Error {
 public:
  using Error::Error;
};

// Raw score 0 or maximal: the maximum-likelihood ability is infinite.
class ExtremeScoreError : public EstimationError {
 public:
  using EstimationError::EstimationError;
};

}  // namespace esgirt
