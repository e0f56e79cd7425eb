#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace fuzzyframes {

using Scalar = std::complex<double>;
using Vector = std::vector<Scalar>;

/// Dense row-major complex matrix. Real problems keep zero imaginary parts.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> entries);
  static Matrix from_columns(std::span<const Vector> columns, std::size_t rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector column(std::size_t c) const;
  void set_column(std::size_t c, std::span<const Scalar> values);

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(Scalar factor);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator*(const Matrix& lhs, const Matrix& rhs);
Matrix operator*(Scalar factor, Matrix m);
Vector operator*(const Matrix& m, std::span<const Scalar> x);

Matrix conj_transpose(const Matrix& m);
Matrix outer(std::span<const Scalar> x, std::span<const Scalar> y);  // x y*
double frobenius_norm(const Matrix& m);
double max_abs(const Matrix& m);
bool is_zero(const Matrix& m);

// Vector helpers. Inner product is linear in the first slot.
Scalar inner(std::span<const Scalar> x, std::span<const Scalar> y);
double norm(std::span<const Scalar> x);
double norm_squared(std::span<const Scalar> x);
Vector add(std::span<const Scalar> x, std::span<const Scalar> y);
Vector subtract(std::span<const Scalar> x, std::span<const Scalar> y);
Vector scaled(Scalar factor, std::span<const Scalar> x);
Vector basis_vector(std::size_t n, std::size_t index);
Vector normalized(std::span<const Scalar> x);
// Unit norm and the largest-magnitude entry made real positive. Zero stays zero.
Vector canonical_direction(std::span<const Scalar> x);

// LU with partial pivoting. inverse() throws SingularOperatorError.
Matrix inverse(const Matrix& m);
Scalar determinant(const Matrix& m);

}  // namespace fuzzyframes
