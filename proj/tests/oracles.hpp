#pragma once
// Independent reference computations for the tests. None of these call the
// eigensolvers under test; they sample, iterate, or expand sums by hand.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "fuzzyframes/fuzzy_space.hpp"
#include "fuzzyframes/linalg.hpp"
#include "fuzzyframes/random.hpp"

namespace oracle {

using fuzzyframes::Field;
using fuzzyframes::Matrix;
using fuzzyframes::Rng;
using fuzzyframes::Scalar;
using fuzzyframes::Vector;

inline double relative_gap(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

// sum_i |<f, v_i>|^2, written out entry by entry.
inline double classical_frame_sum(const std::vector<Vector>& family, const Vector& f) {
  double total = 0.0;
  for (const auto& v : family) {
    Scalar dot = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) dot += f[k] * std::conj(v[k]);
    total += std::norm(dot);
  }
  return total;
}

inline Vector multiply(const Matrix& m, const Vector& x) {
  Vector out(m.rows(), 0.0);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r] += m(r, c) * x[c];
  return out;
}

inline Vector multiply_adjoint(const Matrix& m, const Vector& x) {
  Vector out(m.cols(), 0.0);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[c] += std::conj(m(r, c)) * x[r];
  return out;
}

inline double euclid(const Vector& x) {
  double s = 0.0;
  for (const auto& v : x) s += std::norm(v);
  return std::sqrt(s);
}

inline Vector unit(Vector x) {
  const double n = euclid(x);
  for (auto& v : x) v /= n;
  return x;
}

struct SphereExtremes {
  double min = 0.0;
  double max = 0.0;
  Vector argmin;
  Vector argmax;
};

// Samples the unit sphere, then polishes the best few points by a shrinking
// random pattern search. `ratio` may return NaN to skip a point.
inline SphereExtremes sphere_search(const std::function<double(const Vector&)>& ratio, std::size_t n, Field field,
                                    std::size_t samples, std::uint64_t seed) {
  Rng rng(seed);
  SphereExtremes out{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), {}, {}};
  const auto consider = [&](const Vector& x) {
    const double r = ratio(x);
    if (std::isnan(r)) return;
    if (r < out.min) out.min = r, out.argmin = x;
    if (r > out.max) out.max = r, out.argmax = x;
  };
  for (std::size_t i = 0; i < samples; ++i) consider(rng.unit_vector(n, field));
  for (int sign : {-1, 1}) {
    Vector x = sign < 0 ? out.argmin : out.argmax;
    if (x.empty()) continue;
    double best = ratio(x);
    double step = 0.1;
    while (step > 1e-9) {
      bool improved = false;
      for (int trial = 0; trial < 20; ++trial) {
        Vector d = rng.vector(n, field);
        Vector y = x;
        for (std::size_t k = 0; k < n; ++k) y[k] += step * d[k];
        y = unit(y);
        const double r = ratio(y);
        if (!std::isnan(r) && (sign < 0 ? r < best : r > best)) {
          best = r;
          x = y;
          improved = true;
        }
      }
      if (!improved) step *= 0.5;
    }
    consider(x);
  }
  return out;
}

// Largest singular value by power iteration on T*T from a seeded start.
inline double power_norm(const Matrix& t, std::uint64_t seed, int iterations = 2000) {
  Rng rng(seed);
  Vector x = unit(rng.vector(t.cols(), Field::complex));
  double estimate = 0.0;
  for (int i = 0; i < iterations; ++i) {
    Vector y = multiply_adjoint(t, multiply(t, x));
    const double n = euclid(y);
    if (n == 0.0) return 0.0;
    estimate = std::sqrt(n);
    for (auto& v : y) v /= n;
    x = y;
  }
  return estimate;
}

// Monte-Carlo lower estimate of |T| = sup |Tx| / |x|.
inline double sampled_norm(const Matrix& t, std::size_t samples, std::uint64_t seed) {
  Rng rng(seed);
  double best = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const Vector x = rng.unit_vector(t.cols(), Field::complex);
    best = std::max(best, euclid(multiply(t, x)));
  }
  return best;
}

inline Matrix random_rank(Rng& rng, std::size_t rows, std::size_t cols, std::size_t rank, Field field) {
  return rng.matrix(rows, rank, field) * rng.matrix(rank, cols, field);
}

inline std::vector<Vector> random_family(Rng& rng, std::size_t n, std::size_t m, Field field) {
  std::vector<Vector> out;
  for (std::size_t i = 0; i < m; ++i) out.push_back(rng.vector(n, field));
  return out;
}

inline Field random_field(Rng& rng) { return rng.uniform() < 0.5 ? Field::real : Field::complex; }

}  // namespace oracle
