#include "fuzzyframes/random.hpp"

#include <cmath>
#include <numbers>

#include "fuzzyframes/fuzzy_space.hpp"

namespace fuzzyframes {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::size_t Rng::index(std::size_t n) {
  return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
}

Scalar Rng::scalar(Field field) {
  const double re = normal();
  if (field == Field::real) return re;
  return {re, normal()};
}

Vector Rng::vector(std::size_t n, Field field) {
  Vector v(n);
  for (auto& entry : v) entry = scalar(field);
  return v;
}

Vector Rng::unit_vector(std::size_t n, Field field) {
  Vector v = vector(n, field);
  while (norm(v) == 0.0) v = vector(n, field);
  return normalized(v);
}

Matrix Rng::matrix(std::size_t rows, std::size_t cols, Field field) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = scalar(field);
  return m;
}

}  // namespace fuzzyframes
