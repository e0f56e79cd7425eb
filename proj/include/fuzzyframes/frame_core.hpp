#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fuzzyframes/fuzzy_space.hpp"
#include "fuzzyframes/linalg.hpp"

namespace fuzzyframes {

/// How the alpha-level frame sum scales with the model.
///   once_per_alpha:    sum_i |<f, f_i>_alpha|^2 read as scale * sum_i |<f, f_i>|^2
///   squared_per_alpha: literal squares of the alpha-coefficients, scale^2 * ...
enum class FrameSumConvention { once_per_alpha, squared_per_alpha };

std::string to_string(FrameSumConvention convention);

class FrameFamily {
 public:
  FrameFamily(FuzzyModel model, std::vector<Vector> vectors);
  static FrameFamily from_columns(FuzzyModel model, const Matrix& columns);

  const FuzzyModel& model() const noexcept { return model_; }
  const std::vector<Vector>& vectors() const noexcept { return vectors_; }
  std::size_t size() const noexcept { return vectors_.size(); }
  std::size_t dimension() const noexcept { return model_.dimension(); }

 private:
  FuzzyModel model_;
  std::vector<Vector> vectors_;
};

// Columns are the family members.
Matrix synthesis_matrix(const FrameFamily& family);

// (<f, f_i>_alpha)_i.
Vector analysis_apply(const FrameFamily& family, std::span<const Scalar> f, AlphaLevel alpha);

// F F*, independent of alpha.
Matrix classical_frame_operator(const FrameFamily& family);

// scale(alpha) * F F*: S f = sum_i <f, f_i>_alpha f_i.
Matrix frame_operator(const FrameFamily& family, AlphaLevel alpha);

double frame_sum(const FrameFamily& family, std::span<const Scalar> f, AlphaLevel alpha,
                 FrameSumConvention convention = FrameSumConvention::once_per_alpha);

// frame_sum(f) / scale(alpha) = m * <F F* f, f>, with m = 1 (once) or
// scale(alpha) (squared). Bound checks compare this against |.|^2 forms.
double frame_sum_multiplier(const FuzzyModel& model, AlphaLevel alpha, FrameSumConvention convention);

enum class BoundKind { bessel, frame, k_frame, tight, parseval };

std::string to_string(BoundKind kind);

struct BoundCertificate {
  BoundKind kind = BoundKind::bessel;
  double lower = 0.0;  // 0 when no lower bound exists; +inf when K = 0
  double upper = 0.0;
  bool alpha_independent = true;
  FrameSumConvention convention = FrameSumConvention::once_per_alpha;
  bool lower_is_equality = false;  // frame sum equals lower * |K* f|^2 for every f
  std::optional<Vector> lower_witness;
  std::optional<Vector> upper_witness;

  bool has_lower_bound() const { return lower > 0.0; }
};

// Relative tolerance used for tight and Parseval decisions.
inline constexpr double kTightTolerance = 1e-9;

// Lambda_min / lambda_max of F F*. Lower bound 0 below the rank cutoff.
BoundCertificate optimal_frame_bounds(const FrameFamily& family);

// Largest A with A K K* <= F F*, and B = lambda_max(F F*).
BoundCertificate optimal_kframe_bounds(const FrameFamily& family, const Matrix& k);

// Optimal bounds recomputed from the alpha-materialized operators
// frame_operator(alpha) and scale(alpha) K K*.
BoundCertificate optimal_kframe_bounds_at(const FrameFamily& family, const Matrix& k, AlphaLevel alpha,
                                          FrameSumConvention convention = FrameSumConvention::once_per_alpha);

struct BoundViolation {
  double alpha = 0.0;
  std::string side;  // "lower" or "upper"
  double min_eigenvalue = 0.0;
  Vector witness;
};

struct BoundVerification {
  bool passed = true;
  std::vector<double> alphas;
  std::optional<BoundViolation> violation;  // first one found
};

// A |K* f|_alpha^2 <= frame_sum(f) <= B |f|_alpha^2 as Loewner inequalities on
// the scale-cancelled forms, for every alpha.
BoundVerification verify_bounds(const FrameFamily& family, const Matrix& k, double lower, double upper,
                                std::span<const AlphaLevel> alphas,
                                FrameSumConvention convention = FrameSumConvention::once_per_alpha);

// Multiplies every vector by 1 / sqrt(A). Requires a tight certificate with A > 0.
FrameFamily rescale_to_parseval(const FrameFamily& family, const BoundCertificate& certificate);

struct AtomicSystem {
  FrameFamily family;
  BoundCertificate certificate;
};

// {K e_i} with certificate (1, |K|^2); the lower inequality is an equality.
AtomicSystem atomic_system_from_operator(const FuzzyModel& model, const Matrix& k);

struct AtomicCoefficients {
  Vector beta;               // F+ K f
  double bound_constant = 0; // C = |F+ K|
  double residual = 0.0;     // |K f - F beta|
};

// Throws HypothesisError when range(K) is not inside range(F).
AtomicCoefficients atomic_coefficients(const FrameFamily& family, const Matrix& k, std::span<const Scalar> f);

struct AtomicEquivalence {
  BoundCertificate kframe;
  bool is_kframe = false;           // (b) lower bound exists
  bool coefficients_exist = false;  // (a) range inclusion
  double bound_constant = 0.0;      // C, when (a) holds
  double inclusion_residual = 0.0;
  bool constant_consistent = false; // A_opt >= 1/C^2 - tol
  bool consistent() const { return is_kframe == coefficients_exist && (!coefficients_exist || constant_consistent); }
};

AtomicEquivalence atomic_system_equivalence_check(const FrameFamily& family, const Matrix& k);

struct RestrictedInverseReport {
  std::size_t samples = 0;
  std::size_t violations = 0;
  double k_dagger_norm = 0.0;
  double worst_margin = 0.0;  // most negative relative slack seen (0 if none)
  std::optional<Vector> witness;
  bool passed() const { return violations == 0; }
};

// Sandwich inequalities on range(K) and on S(range(K)), checked in
// scale-cancelled form. Throws PreconditionError when no lower bound exists.
RestrictedInverseReport restricted_inverse_check(const FrameFamily& family, const Matrix& k,
                                                 std::size_t sample_count, std::uint64_t seed);

struct Reconstruction {
  Vector from_dual_analysis;   // sum <f, S^-1 f_i>_alpha f_i
  Vector from_dual_synthesis;  // sum <f, f_i>_alpha S^-1 f_i
  double analysis_residual = 0.0;
  double synthesis_residual = 0.0;
};

// Throws SingularOperatorError with a kernel witness when S is not invertible.
Reconstruction reconstruct(const FrameFamily& family, std::span<const Scalar> f, AlphaLevel alpha);

// Inverse of frame_operator(alpha); throws SingularOperatorError.
Matrix frame_operator_inverse(const FrameFamily& family, AlphaLevel alpha);

}  // namespace fuzzyframes
