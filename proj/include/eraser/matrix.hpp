#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "eraser/field.hpp"

namespace eraser {

/// Dense square matrix over a binary field, stored row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr field, std::size_t n);  // zero matrix

  static Matrix identity(FieldPtr field, std::size_t n);
  /// Validates entry count and that every entry lies in the field.
  static Matrix from_entries(FieldPtr field, std::size_t n, std::vector<Elem> entries);

  std::size_t n() const { return n_; }
  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }

  Elem operator()(std::size_t r, std::size_t c) const { return entries_[r * n_ + c]; }
  Elem& operator()(std::size_t r, std::size_t c) { return entries_[r * n_ + c]; }

  std::span<const Elem> entries() const { return entries_; }
  std::span<Elem> entries() { return entries_; }

  Matrix operator*(const Matrix& rhs) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix& operator+=(const Matrix& rhs);
  Matrix scaled(Elem s) const;

  /// Gauss-Jordan; throws Errc::SingularMatrix.
  Matrix inverse() const;
  std::optional<Matrix> try_inverse() const;
  bool invertible() const { return rank() == n_; }
  std::size_t rank() const;
  Elem determinant() const;
  bool is_zero() const;

  bool operator==(const Matrix& rhs) const;

 private:
  void require_compatible(const Matrix& rhs) const;

  FieldPtr field_;
  std::size_t n_ = 0;
  std::vector<Elem> entries_;
};

}  // namespace eraser
