#pragma once
// The worked instances shared by the unit and acceptance tests.

#include <cmath>
#include <vector>

#include "fuzzyframes/frame_core.hpp"

namespace fixture {

using fuzzyframes::BaseSpace;
using fuzzyframes::Field;
using fuzzyframes::FrameFamily;
using fuzzyframes::FuzzyModel;
using fuzzyframes::Matrix;
using fuzzyframes::Profile;
using fuzzyframes::Vector;

// Complex 3-space, family {2e1, e2/sqrt2, e2/sqrt2}.
inline FrameFamily family_3_1() {
  const double r = 1.0 / std::sqrt(2.0);
  return FrameFamily(FuzzyModel(BaseSpace(3, Field::complex), Profile::scaled),
                     {Vector{2.0, 0.0, 0.0}, Vector{0.0, r, 0.0}, Vector{0.0, r, 0.0}});
}

// K e1 = e1, K e2 = e1 - e2, K e3 = e1 + e2.
inline Matrix operator_3_1() { return Matrix{{1.0, 1.0, 1.0}, {0.0, -1.0, 1.0}, {0.0, 0.0, 0.0}}; }

// Real 3-space, family {(1,1,1), (1,-1,-1), (0,1,-2)}.
inline FrameFamily family_4_1(Profile profile = Profile::scaled) {
  return FrameFamily(FuzzyModel(BaseSpace(3, Field::real), profile),
                     {Vector{1.0, 1.0, 1.0}, Vector{1.0, -1.0, -1.0}, Vector{0.0, 1.0, -2.0}});
}

// K e1 = e1, K e2 = e1, K e3 = e2.
inline Matrix operator_4_1() { return Matrix{{1.0, 1.0, 0.0}, {0.0, 0.0, 1.0}, {0.0, 0.0, 0.0}}; }

inline FrameFamily standard_basis(std::size_t n, Field field = Field::real, Profile profile = Profile::scaled) {
  std::vector<Vector> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(fuzzyframes::basis_vector(n, i));
  return FrameFamily(FuzzyModel(BaseSpace(n, field), profile), v);
}

inline const std::vector<double> kDefaultAlphas{0.1, 0.5, 0.9};

}  // namespace fixture
