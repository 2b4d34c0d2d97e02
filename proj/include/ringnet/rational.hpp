#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <string>

#include "ringnet/error.hpp"

namespace ringnet {

/// Exact rational on 64-bit integers. Always reduced with a positive
/// denominator; every operation that would leave int64 throws OverflowError.
class Rational {
 public:
  constexpr Rational() = default;

  Rational(std::int64_t num, std::int64_t den = 1) {
    if (den == 0) throw Error("rational with zero denominator");
    if (den < 0) {
      num = checked_neg(num);
      den = checked_neg(den);
    }
    const std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
  }

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_ == 0; }

  std::string to_string() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    const Wide g = std::gcd(a.den_, b.den_);
    return reduce(Wide{a.num_} * (b.den_ / g) + Wide{b.num_} * (a.den_ / g), Wide{a.den_ / g} * b.den_, "addition");
  }

  friend Rational operator-(const Rational& a) { return raw(checked_neg(a.num_), a.den_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

  friend Rational operator*(const Rational& a, const Rational& b) {
    return reduce(Wide{a.num_} * b.num_, Wide{a.den_} * b.den_, "multiplication");
  }

  Rational inverse() const {
    if (num_ == 0) throw Error("inverse of zero rational");
    return Rational(den_, num_);
  }

  friend bool operator==(const Rational&, const Rational&) = default;

 private:
  using Wide = __int128;

  static Wide wide_gcd(Wide a, Wide b) {
    if (a < 0) a = -a;
    while (b != 0) {
      const Wide t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  // den > 0. Reduces in 128 bits and narrows, throwing if the result does not fit.
  static Rational reduce(Wide num, Wide den, const char* op) {
    const Wide g = wide_gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    constexpr Wide lo = std::numeric_limits<std::int64_t>::min();
    constexpr Wide hi = std::numeric_limits<std::int64_t>::max();
    if (num < lo || num > hi || den > hi) throw OverflowError(std::string("rational ") + op + " overflow");
    return raw(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
  }

  static Rational raw(std::int64_t n, std::int64_t d) {
    Rational r;
    r.num_ = n;
    r.den_ = d;
    return r;
  }

  static std::int64_t checked_neg(std::int64_t a) {
    std::int64_t r;
    if (__builtin_sub_overflow(std::int64_t{0}, a, &r)) throw OverflowError("rational negation overflow");
    return r;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace ringnet
