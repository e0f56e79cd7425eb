#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "fuzzyframes/frame_core.hpp"

namespace fuzzyframes {

/// Result of probing an inequality by sampling. `verified` never means proved.
struct SampledCheck {
  double max_violation = 0.0;  // largest lhs - rhs seen; <= tolerance means verified
  double tolerance = 0.0;
  Vector witness;              // unit vector attaining max_violation
  std::size_t evaluations = 0;
  bool verified = false;
  std::string status() const { return verified ? "verified (sampled)" : "violated"; }
};

struct OperatorPerturbationReport {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  SampledCheck hypothesis;  // |(K1* - K2*) f| <= l1 |K1* f| + l2 |K2* f|
  // For lambda2 = 0: the least lambda1 from douglas_lambda(K1 - K2, K1).
  std::optional<double> spectral_lambda1;
  bool spectrally_certified = false;
};

struct PerturbationSampling {
  std::size_t samples = 10000;
  std::size_t refinement_steps = 50;
  std::uint64_t seed = 0;
};

// Requires lambda1, lambda2 >= 0 and lambda2 < 1.
OperatorPerturbationReport check_operator_perturbation(const Matrix& k1, const Matrix& k2, double lambda1,
                                                       double lambda2, Field field,
                                                       const PerturbationSampling& sampling = {});

// (A ((1 - l2)/(1 + l1))^2, B). Throws InputError for lambda2 >= 1.
std::pair<double, double> derive_operator_perturbed_bounds(double lower, double upper, double lambda1,
                                                           double lambda2);

struct FamilyPerturbation {
  double constant = 0.0;            // minimal M, +inf when unbounded
  double versus_first = 0.0;        // sup <S_d f,f>/<S_F f,f>
  double versus_second = 0.0;       // sup <S_d f,f>/<S_G f,f>
  bool stronger_than_hypothesis = false;  // M <= 1
  Vector witness;                   // maximizer of the larger ratio
};

// Least M with sum|<f, f_i - g_i>|^2 <= M min(sum|<f,f_i>|^2, sum|<f,g_i>|^2).
FamilyPerturbation family_perturbation_constant(const FrameFamily& f, const FrameFamily& g);

// (A / (sqrt M + 1)^2, B (sqrt M + 1)^2). Throws InputError for infinite or negative M.
std::pair<double, double> derive_family_perturbed_bounds(double lower, double upper, double constant);

// Inequality check of the family hypothesis at the given M on random samples.
SampledCheck check_family_perturbation(const FrameFamily& f, const FrameFamily& g, double constant,
                                       std::size_t samples, std::uint64_t seed);

struct FrameEquivalence {
  double constant = 0.0;  // max{(1 + sqrt(B/C))^2, (1 + sqrt(D/A))^2}
  std::pair<double, double> first_bounds;   // (A, B)
  std::pair<double, double> second_bounds;  // (C, D)
  SampledCheck hypothesis;
};

// Throws PreconditionError when either family is not a frame.
FrameEquivalence frame_equivalence_constant(const FrameFamily& f, const FrameFamily& g, std::size_t samples = 1000,
                                            std::uint64_t seed = 0);

struct IdentityPerturbationResult {
  SampledCheck hypothesis;  // |K* f - f| <= l1 |K* f| + l2 |f|
  bool certified = false;
  double lower = 0.0;
  double upper = 0.0;
  std::optional<BoundVerification> verification;
};

// Corollary form with K2 = I: needs 0 <= lambda1, lambda2 < 1 and a K-frame.
IdentityPerturbationResult identity_perturbation_check(const FrameFamily& family, const Matrix& k, double lambda1,
                                                       double lambda2, std::span<const AlphaLevel> alphas,
                                                       const PerturbationSampling& sampling = {});

}  // namespace fuzzyframes
