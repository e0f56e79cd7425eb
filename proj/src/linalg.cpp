#include "fuzzyframes/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fuzzyframes/errors.hpp"

namespace fuzzyframes {

Matrix::Matrix(std::initializer_list<std::initializer_list<Scalar>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw InputError("ragged matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> entries) {
  Matrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

Matrix Matrix::from_columns(std::span<const Vector> columns, std::size_t rows) {
  Matrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) m.set_column(c, columns[c]);
  return m;
}

Vector Matrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void Matrix::set_column(std::size_t c, std::span<const Scalar> values) {
  if (values.size() != rows_) throw InputError("column length does not match matrix rows");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = values[r];
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InputError("matrix sum shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InputError("matrix difference shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(Scalar factor) {
  for (auto& entry : data_) entry *= factor;
  return *this;
}

Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
Matrix operator*(Scalar factor, Matrix m) { return m *= factor; }

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.cols() != rhs.rows()) throw InputError("matrix product shape mismatch");
  Matrix out(lhs.rows(), rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i)
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const Scalar a = lhs(i, k);
      if (a == Scalar{}) continue;
      for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

Vector operator*(const Matrix& m, std::span<const Scalar> x) {
  if (m.cols() != x.size()) throw InputError("matrix-vector shape mismatch");
  Vector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Scalar acc{};
    for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * x[j];
    out[i] = acc;
  }
  return out;
}

Matrix conj_transpose(const Matrix& m) {
  Matrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
  return out;
}

Matrix outer(std::span<const Scalar> x, std::span<const Scalar> y) {
  Matrix out(x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) out(i, j) = x[i] * std::conj(y[j]);
  return out;
}

double frobenius_norm(const Matrix& m) {
  double acc = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) acc += std::norm(m(i, j));
  return std::sqrt(acc);
}

double max_abs(const Matrix& m) {
  double best = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) best = std::max(best, std::abs(m(i, j)));
  return best;
}

bool is_zero(const Matrix& m) { return max_abs(m) == 0.0; }

Scalar inner(std::span<const Scalar> x, std::span<const Scalar> y) {
  if (x.size() != y.size()) throw InputError("inner product dimension mismatch");
  Scalar acc{};
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * std::conj(y[i]);
  return acc;
}

double norm_squared(std::span<const Scalar> x) {
  double acc = 0.0;
  for (const auto& v : x) acc += std::norm(v);
  return acc;
}

double norm(std::span<const Scalar> x) { return std::sqrt(norm_squared(x)); }

Vector add(std::span<const Scalar> x, std::span<const Scalar> y) {
  if (x.size() != y.size()) throw InputError("vector sum dimension mismatch");
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
  return out;
}

Vector subtract(std::span<const Scalar> x, std::span<const Scalar> y) {
  if (x.size() != y.size()) throw InputError("vector difference dimension mismatch");
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - y[i];
  return out;
}

Vector scaled(Scalar factor, std::span<const Scalar> x) {
  Vector out(x.begin(), x.end());
  for (auto& v : out) v *= factor;
  return out;
}

Vector basis_vector(std::size_t n, std::size_t index) {
  Vector e(n);
  e.at(index) = 1.0;
  return e;
}

Vector normalized(std::span<const Scalar> x) {
  const double len = norm(x);
  if (len == 0.0) return Vector(x.begin(), x.end());
  return scaled(1.0 / len, x);
}

Vector canonical_direction(std::span<const Scalar> x) {
  Vector out = normalized(x);
  std::size_t lead = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    // Ties broken toward the lowest index, with slack for rounding noise.
    if (std::abs(out[i]) > best + 1e-12) {
      best = std::abs(out[i]);
      lead = i;
    }
  }
  if (best <= 0.0) return out;
  const Scalar phase = std::conj(out[lead]) / std::abs(out[lead]);
  for (auto& v : out) v *= phase;
  out[lead] = std::abs(out[lead]);
  return out;
}

namespace {

struct LuFactors {
  Matrix lu;
  std::vector<std::size_t> pivot;
  int sign = 1;
  bool singular = false;
};

LuFactors lu_factor(const Matrix& m) {
  if (!m.is_square()) throw InputError("LU factorization needs a square matrix");
  const std::size_t n = m.rows();
  LuFactors f{m, std::vector<std::size_t>(n), 1, false};
  for (std::size_t i = 0; i < n; ++i) f.pivot[i] = i;
  const double scale = std::max(max_abs(m), 1e-300);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(f.lu(i, k)) > std::abs(f.lu(p, k))) p = i;
    if (std::abs(f.lu(p, k)) <= 1e-14 * scale) {
      f.singular = true;
      continue;
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(p, j));
      std::swap(f.pivot[k], f.pivot[p]);
      f.sign = -f.sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const Scalar factor = f.lu(i, k) / f.lu(k, k);
      f.lu(i, k) = factor;
      for (std::size_t j = k + 1; j < n; ++j) f.lu(i, j) -= factor * f.lu(k, j);
    }
  }
  return f;
}

}  // namespace

Matrix inverse(const Matrix& m) {
  const LuFactors f = lu_factor(m);
  if (f.singular) throw SingularOperatorError("matrix is singular", 0.0);
  const std::size_t n = m.rows();
  Matrix inv(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = f.pivot[i] == c ? 1.0 : 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t j = i + 1; j < n; ++j) x[i] -= f.lu(i, j) * x[j];
      x[i] /= f.lu(i, i);
    }
    inv.set_column(c, x);
  }
  return inv;
}

Scalar determinant(const Matrix& m) {
  const LuFactors f = lu_factor(m);
  if (f.singular) return 0.0;
  Scalar det = static_cast<double>(f.sign);
  for (std::size_t i = 0; i < m.rows(); ++i) det *= f.lu(i, i);
  return det;
}

}  // namespace fuzzyframes
