#pragma once

#include <cstdint>
#include <random>

#include "fuzzyframes/linalg.hpp"

namespace fuzzyframes {

enum class Field;

/// Seeded generator with portable uniform and normal draws, so reports are
/// byte-identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();                       // [0, 1)
  double uniform(double lo, double hi);
  double normal();
  std::size_t index(std::size_t n);       // [0, n)
  Scalar scalar(Field field);             // standard normal entries
  Vector vector(std::size_t n, Field field);
  Vector unit_vector(std::size_t n, Field field);
  Matrix matrix(std::size_t rows, std::size_t cols, Field field);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace fuzzyframes
