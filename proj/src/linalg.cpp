#include "kuperberg/linalg.hpp"

#include "kuperberg/error.hpp"

namespace kuperberg {

Vector zero_vector(const Field& field, std::size_t n) { return Vector(n, Scalar::zero(field)); }

Vector unit_vector(const Field& field, std::size_t n, std::size_t i) {
  Vector v = zero_vector(field, n);
  v.at(i) = Scalar::one(field);
  return v;
}

bool is_zero(const Vector& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

Vector add(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::dimension_mismatch, "vector add");
  Vector r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vector sub(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::dimension_mismatch, "vector sub");
  Vector r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vector scale(const Scalar& s, const Vector& v) {
  Vector r = v;
  for (auto& x : r) x *= s;
  return r;
}

Scalar dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::dimension_mismatch, "dot");
  if (a.empty()) return Scalar();
  Scalar r = Scalar::zero(a.front().field());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero() || b[i].is_zero()) continue;
    r.add_product(a[i], b[i]);
  }
  return r;
}

Matrix::Matrix(const Field& field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(field)) {}

Matrix Matrix::identity(const Field& field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(field);
  return m;
}

Vector Matrix::column(std::size_t c) const {
  Vector v;
  v.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
  return v;
}

Vector Matrix::apply(const Vector& v) const {
  if (v.size() != cols_) throw Error(ErrorCode::dimension_mismatch, "matrix-vector product");
  Vector out = zero_vector(field_, rows_);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (v[c].is_zero()) continue;
    for (std::size_t r = 0; r < rows_; ++r) {
      const Scalar& m = (*this)(r, c);
      if (!m.is_zero()) out[r].add_product(m, v[c]);
    }
  }
  return out;
}

Vector Matrix::apply_transpose(const Vector& v) const {
  if (v.size() != rows_) throw Error(ErrorCode::dimension_mismatch, "vector-matrix product");
  Vector out = zero_vector(field_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    if (v[r].is_zero()) continue;
    for (std::size_t c = 0; c < cols_; ++c) {
      const Scalar& m = (*this)(r, c);
      if (!m.is_zero()) out[c].add_product(v[r], m);
    }
  }
  return out;
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols_ != other.rows_) throw Error(ErrorCode::dimension_mismatch, "matrix product");
  Matrix out(field_, rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) {
        const Scalar& b = other(k, j);
        if (!b.is_zero()) out(i, j).add_product(a, b);
      }
    }
  return out;
}

Matrix Matrix::operator+(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw Error(ErrorCode::dimension_mismatch, "matrix sum");
  Matrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += other.data_[i];
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

Matrix Matrix::pow(long exponent) const {
  if (rows_ != cols_) throw Error(ErrorCode::dimension_mismatch, "power of a non-square matrix");
  Matrix base = *this;
  if (exponent < 0) {
    auto inv = inverse();
    if (!inv) throw Error(ErrorCode::singular_antipode, "negative power of a singular matrix");
    base = std::move(*inv);
    exponent = -exponent;
  }
  Matrix r = identity(field_, rows_);
  while (exponent) {
    if (exponent & 1) r = r * base;
    exponent >>= 1;
    if (exponent) base = base * base;
  }
  return r;
}

bool Matrix::is_identity() const { return rows_ == cols_ && *this == identity(field_, rows_); }

std::vector<std::size_t> Matrix::row_reduce() {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
    std::size_t p = row;
    while (p < rows_ && (*this)(p, col).is_zero()) ++p;
    if (p == rows_) continue;
    if (p != row)
      for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(p, c), (*this)(row, c));
    const Scalar inv = (*this)(row, col).inverse();
    for (std::size_t c = col; c < cols_; ++c) (*this)(row, c) *= inv;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == row || (*this)(r, col).is_zero()) continue;
      const Scalar f = (*this)(r, col);
      for (std::size_t c = col; c < cols_; ++c) {
        if ((*this)(row, c).is_zero()) continue;
        (*this)(r, c) -= f * (*this)(row, c);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::vector<Vector> Matrix::nullspace() const {
  Matrix m = *this;
  const auto pivots = m.row_reduce();
  std::vector<bool> is_pivot(cols_, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    Vector v = zero_vector(field_, cols_);
    v[free] = Scalar::one(field_);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t Matrix::rank() const {
  Matrix m = *this;
  return m.row_reduce().size();
}

std::optional<Matrix> Matrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  const std::size_t n = rows_;
  Matrix aug(field_, n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = (*this)(r, c);
    aug(r, n + r) = Scalar::one(field_);
  }
  const auto pivots = aug.row_reduce();
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(field_, n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
  return inv;
}

std::optional<Vector> Matrix::solve(const Vector& b) const {
  if (b.size() != rows_) throw Error(ErrorCode::dimension_mismatch, "solve");
  Matrix aug(field_, rows_, cols_ + 1);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) aug(r, c) = (*this)(r, c);
    aug(r, cols_) = b[r];
  }
  const auto pivots = aug.row_reduce();
  if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
  Vector x = zero_vector(field_, cols_);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, cols_);
  return x;
}

}  // namespace kuperberg
