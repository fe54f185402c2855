#pragma once

#include <stdexcept>
#include <string>

namespace blockarith {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument is outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A constructed value violates the invariants of its type (abc triple,
/// Erdős–Woods pair, factorization).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An input exceeds a size cap (factorization bound, primality bound,
/// lemma degree cap).
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

/// A table would not fit in the configured memory budget.
class MemoryBudgetError : public ResourceLimitError {
 public:
  using ResourceLimitError::ResourceLimitError;
};

/// A query falls outside a precomputed table.
class OutOfTableError : public Error {
 public:
  using Error::Error;
};

}  // namespace blockarith
