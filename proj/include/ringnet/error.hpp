#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ringnet {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed ring spec, element literal, network or assignment file.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Operands belong to different rings.
class RingMismatch : public Error {
 public:
  using Error::Error;
};

/// Matrix shapes do not compose, or an assignment violates the (k,n) shape rule.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Exact rational arithmetic left the 64-bit range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// An operation that needs a finite ring received an infinite one.
class InfiniteRing : public Error {
 public:
  using Error::Error;
};

/// Operation requires a field (rank, inverses of nonzero elements).
class NotAField : public Error {
 public:
  using Error::Error;
};

/// Exhaustive work would exceed the caller's cap.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t required, std::uint64_t cap)
      : Error(what + " (requires " + std::to_string(required) + ", cap " + std::to_string(cap) + ")"),
        required_(required),
        cap_(cap) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t required_;
  std::uint64_t cap_;
};

/// Structurally invalid network passed to an operation that needs a valid one.
class InvalidNetwork : public Error {
 public:
  using Error::Error;
};

}  // namespace ringnet
