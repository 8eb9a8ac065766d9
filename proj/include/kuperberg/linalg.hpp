#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "kuperberg/scalar.hpp"

namespace kuperberg {

using Vector = std::vector<Scalar>;

Vector zero_vector(const Field& field, std::size_t n);
Vector unit_vector(const Field& field, std::size_t n, std::size_t i);
bool is_zero(const Vector& v);
Vector add(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);
Vector scale(const Scalar& s, const Vector& v);
Scalar dot(const Vector& a, const Vector& b);

/// Dense row-major matrix over a Field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(const Field& field, std::size_t rows, std::size_t cols);

  static Matrix identity(const Field& field, std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const Field& field() const noexcept { return field_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector column(std::size_t c) const;
  Vector apply(const Vector& v) const;
  /// Row vector times matrix: (v^T M)^T.
  Vector apply_transpose(const Vector& v) const;

  Matrix operator*(const Matrix& other) const;
  Matrix operator+(const Matrix& other) const;
  Matrix transpose() const;
  Matrix pow(long exponent) const;

  bool is_identity() const;
  friend bool operator==(const Matrix&, const Matrix&) = default;

  /// Nullspace basis (column vectors) via reduced row echelon form.
  std::vector<Vector> nullspace() const;
  std::size_t rank() const;
  /// Inverse, or nullopt for singular matrices.
  std::optional<Matrix> inverse() const;
  /// Some solution of M x = b, or nullopt when inconsistent.
  std::optional<Vector> solve(const Vector& b) const;

 private:
  // Reduces in place; returns pivot columns.
  std::vector<std::size_t> row_reduce();

  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

}  // namespace kuperberg
