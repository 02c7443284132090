#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace steer {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes or subsystem factorizations do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A matrix or vector violates a structural invariant (Hermiticity,
/// positivity, unit trace, unitarity, normalization, finiteness).
class InvalidOperator : public Error {
 public:
  using Error::Error;
};

/// Out-of-range parameter passed to a constructor or fixture.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// The input is well formed but does not meet an operation's precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class NonPureOutcome : public PreconditionError {
 public:
  NonPureOutcome(std::size_t index, double deficit)
      : PreconditionError("outcome " + std::to_string(index) +
                          " steers to a mixed state (purity deficit " +
                          std::to_string(deficit) + ")"),
        index_(index),
        deficit_(deficit) {}

  std::size_t index() const noexcept { return index_; }
  double deficit() const noexcept { return deficit_; }

 private:
  std::size_t index_;
  double deficit_;
};

class UnreachableTarget : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A structural result that must hold whenever its premises hold came out
/// false. Seeing one means a bug or a numerical breakdown.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace steer
