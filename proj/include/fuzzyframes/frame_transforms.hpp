#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fuzzyframes/frame_core.hpp"

namespace fuzzyframes {

/// A bound pair produced by one of the closure theorems, with its check.
struct DerivedBound {
  std::string formula_tag;
  std::vector<std::pair<double, double>> source_bounds;
  double lower = 0.0;
  double upper = 0.0;
  Matrix target;                   // operator the bound is claimed for
  BoundVerification verification;  // verify_bounds(family, target, lower, upper)
};

/// Output of a closure theorem. `stated` is the bound as the theorem writes
/// it. `corrected` is present when the stated constant is not valid in
/// general, and holds the constant that the same argument does support.
struct ClosureResult {
  DerivedBound stated;
  std::optional<DerivedBound> corrected;
  BoundCertificate optimal;  // direct certificate for the target operator
  std::vector<std::string> notes;

  // The bound a caller should rely on.
  const DerivedBound& reliable() const { return corrected ? *corrected : stated; }
};

// a K1 + b K2, stated lower [max(|a|^2,|b|^2) (1/A1 + 1/A2)]^-1, upper (B1+B2)/2.
ClosureResult combine_scalar(const FrameFamily& family, const Matrix& k1, const Matrix& k2, Scalar a, Scalar b,
                             std::span<const AlphaLevel> alphas);

// K1 K2 with lower A1 / |K2|^2, upper B1.
ClosureResult combine_product(const FrameFamily& family, const Matrix& k1, const Matrix& k2,
                              std::span<const AlphaLevel> alphas);

// sum a_j K_j (stated lower A / (n max|a_j|^2)) or, without coefficients, the
// ordered product K_1 K_2 ... K_n (lower A / prod_{j>=2} |K_j|^2).
ClosureResult combine_many(const FrameFamily& family, std::span<const Matrix> operators,
                           std::optional<std::vector<Scalar>> coefficients, std::span<const AlphaLevel> alphas);

struct BesselPairResult {
  BoundCertificate certificate;  // for the certified family
  bool certified_first = true;   // F (true) or G (false, swapped identity)
  double factorization_residual = 0.0;
  double bessel_first = 0.0;     // C
  double bessel_second = 0.0;    // D
  BoundVerification verification;
};

// T_F T_G* = K certifies F with lower 1/D; T_G T_F* = K certifies G with 1/C.
// Throws HypothesisError when neither identity holds.
BesselPairResult bessel_pair_kframe(const FrameFamily& f, const FrameFamily& g, const Matrix& k,
                                    std::span<const AlphaLevel> alphas);

enum class TransformVariant { invertible, coisometry };

struct TransformResult {
  FrameFamily family;  // {T f_i}
  DerivedBound derived;
  BoundCertificate optimal;
  double commutation_residual = 0.0;
};

// Throws HypothesisError when T K != K T, T is singular (invertible variant),
// or T T* != I (coisometry variant).
TransformResult transform_family(const FrameFamily& family, const Matrix& t, const Matrix& k,
                                 TransformVariant variant, std::span<const AlphaLevel> alphas);

struct TransferResult {
  double lambda = 0.0;
  DerivedBound derived;
  BoundCertificate optimal;
};

// range(T) in range(K) turns a K-frame into a T-frame with lower A / lambda^2.
TransferResult operator_transfer(const FrameFamily& family, const Matrix& k, const Matrix& t,
                                 std::span<const AlphaLevel> alphas);

struct SynthesisReport {
  Matrix synthesis;
  bool range_included = false;  // range(K) in range(T)
  double inclusion_residual = 0.0;
  BoundCertificate kframe;
  bool equivalence_holds = false;  // range_included == (A_opt > 0)
};

SynthesisReport synthesis_characterization(const FrameFamily& family, const Matrix& k);

struct BuiltFamily {
  FrameFamily family;
  bool certified = false;
  double lower = 0.0;  // 1 / douglas_lambda(K, T)^2 when certified
  double upper = 0.0;  // |T|^2
  BoundVerification verification;
};

BuiltFamily build_family(const FuzzyModel& model, const Matrix& t, const Matrix& k,
                         std::span<const AlphaLevel> alphas);

}  // namespace fuzzyframes
