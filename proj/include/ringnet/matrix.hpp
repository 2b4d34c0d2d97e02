#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ringnet/element.hpp"
#include "ringnet/error.hpp"
#include "ringnet/rings.hpp"

namespace ringnet {

/// Rectangular matrix over one ring of the tower, row-major.
class Matrix {
 public:
  Matrix(Ring ring, std::size_t rows, std::size_t cols, std::vector<Element> entries)
      : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows_ == 0 || cols_ == 0) throw ShapeError("matrix dimensions must be positive");
    if (entries_.size() != rows_ * cols_) {
      throw ShapeError("matrix " + shape_string() + " needs " + std::to_string(rows_ * cols_) + " entries, got " +
                       std::to_string(entries_.size()));
    }
    for (const auto& e : entries_) {
      if (!(e.ring() == ring_)) throw RingMismatch("matrix entry over " + e.ring().to_string() + " in " + ring_.to_string() + " matrix");
    }
  }

  static Matrix zeros(const Ring& r, std::size_t rows, std::size_t cols) {
    return Matrix(r, rows, cols, std::vector<Element>(rows * cols, zero(r)));
  }

  static Matrix identity(const Ring& r, std::size_t n) {
    Matrix m = zeros(r, n, n);
    for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = one(r);
    return m;
  }

  /// 1x1 matrix holding a single ring element.
  static Matrix scalar(const Element& e) { return Matrix(e.ring(), 1, 1, {e}); }

  const Ring& ring() const noexcept { return ring_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const std::vector<Element>& entries() const noexcept { return entries_; }

  const Element& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  void set(std::size_t i, std::size_t j, Element e) {
    if (!(e.ring() == ring_)) throw RingMismatch("set: entry over " + e.ring().to_string());
    entries_[i * cols_ + j] = std::move(e);
  }

  std::string shape_string() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  bool is_zero() const {
    for (const auto& e : entries_) {
      if (!ringnet::is_zero(e)) return false;
    }
    return true;
  }

  bool is_identity() const { return rows_ == cols_ && *this == identity(ring_, rows_); }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.ring_ == b.ring_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  Ring ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Element> entries_;
};

inline Matrix mat_zero(const Ring& r, std::size_t rows, std::size_t cols) { return Matrix::zeros(r, rows, cols); }
inline Matrix mat_identity(const Ring& r, std::size_t n) { return Matrix::identity(r, n); }
inline bool mat_eq(const Matrix& a, const Matrix& b) { return a == b; }

inline Matrix mat_add(const Matrix& a, const Matrix& b) {
  if (!(a.ring() == b.ring())) throw RingMismatch("mat_add: " + a.ring().to_string() + " vs " + b.ring().to_string());
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError("mat_add: " + a.shape_string() + " vs " + b.shape_string());
  }
  std::vector<Element> e;
  e.reserve(a.entries().size());
  for (std::size_t i = 0; i < a.entries().size(); ++i) e.push_back(add(a.entries()[i], b.entries()[i]));
  return Matrix(a.ring(), a.rows(), a.cols(), std::move(e));
}

inline Matrix mat_neg(const Matrix& a) {
  std::vector<Element> e;
  e.reserve(a.entries().size());
  for (const auto& x : a.entries()) e.push_back(neg(x));
  return Matrix(a.ring(), a.rows(), a.cols(), std::move(e));
}

inline Matrix mat_sub(const Matrix& a, const Matrix& b) { return mat_add(a, mat_neg(b)); }

/// (a x b)(b x c) = (a x c). Entries multiply as A[i][t] * B[t][j], keeping
/// left-to-right order for noncommutative base rings.
inline Matrix mat_mul(const Matrix& a, const Matrix& b) {
  if (!(a.ring() == b.ring())) throw RingMismatch("mat_mul: " + a.ring().to_string() + " vs " + b.ring().to_string());
  if (a.cols() != b.rows()) throw ShapeError("mat_mul: " + a.shape_string() + " * " + b.shape_string());
  const Ring& r = a.ring();
  std::vector<Element> e;
  e.reserve(a.rows() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Element s = zero(r);
      for (std::size_t t = 0; t < a.cols(); ++t) s = add(s, mul(a(i, t), b(t, j)));
      e.push_back(std::move(s));
    }
  }
  return Matrix(r, a.rows(), b.cols(), std::move(e));
}

inline Matrix transpose(const Matrix& a) {
  std::vector<Element> e;
  e.reserve(a.entries().size());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) e.push_back(a(i, j));
  }
  return Matrix(a.ring(), a.cols(), a.rows(), std::move(e));
}

/// Row rank by exact Gaussian elimination. Fields only.
inline std::size_t rank(const Matrix& a) {
  if (!a.ring().is_field()) throw NotAField("rank requires a field, got " + a.ring().to_string());
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::vector<Element> m = a.entries();
  auto at = [&](std::size_t i, std::size_t j) -> Element& { return m[i * cols + j]; };

  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && is_zero(at(pivot, c))) ++pivot;
    if (pivot == rows) continue;
    if (pivot != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(at(pivot, j), at(r, j));
    }
    const Element inv = field_inverse(at(r, c));
    for (std::size_t j = c; j < cols; ++j) at(r, j) = mul(inv, at(r, j));
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || is_zero(at(i, c))) continue;
      const Element f = at(i, c);
      for (std::size_t j = c; j < cols; ++j) at(i, j) = sub(at(i, j), mul(f, at(r, j)));
    }
    ++r;
  }
  return r;
}

inline std::string format_matrix(const Matrix& m, bool json = false) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ", ";
      out += format_element(m(i, j), json);
    }
    out += "]";
  }
  return out + "]";
}

}  // namespace ringnet
