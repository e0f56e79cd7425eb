#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fuzzyframes/linalg.hpp"

namespace fuzzyframes {

enum class Field { real, complex };

/// scaled: mu = |t|/(|t|+|x||y|) above the threshold t > |x||y|.
/// crisp:  mu = 1 above the same threshold.
enum class Profile { scaled, crisp };

/// Membership level strictly inside (0, 1).
class AlphaLevel {
 public:
  explicit AlphaLevel(double value);
  double value() const noexcept { return value_; }
  friend bool operator==(AlphaLevel, AlphaLevel) = default;
  friend auto operator<=>(AlphaLevel, AlphaLevel) = default;

 private:
  double value_;
};

std::vector<AlphaLevel> make_alphas(std::span<const double> values);

class BaseSpace {
 public:
  BaseSpace(std::size_t dimension, Field field);
  std::size_t dimension() const noexcept { return dimension_; }
  Field field() const noexcept { return field_; }
  friend bool operator==(const BaseSpace&, const BaseSpace&) = default;

 private:
  std::size_t dimension_;
  Field field_;
};

class FuzzyModel {
 public:
  FuzzyModel(BaseSpace space, Profile profile) : space_(space), profile_(profile) {}

  const BaseSpace& space() const noexcept { return space_; }
  Profile profile() const noexcept { return profile_; }
  std::size_t dimension() const noexcept { return space_.dimension(); }
  Field field() const noexcept { return space_.field(); }

  /// Factor relating alpha-quantities to classical ones:
  /// <x,y>_alpha = scale * <x,y>,  |x|_alpha^2 = scale * |x|^2.
  double scale(AlphaLevel alpha) const noexcept;

  friend bool operator==(const FuzzyModel&, const FuzzyModel&) = default;

 private:
  BaseSpace space_;
  Profile profile_;
};

// Membership mu(x, y, t). Non-positive-real t (imaginary part above 1e-12
// or real part <= 0) gives 0.
double mu_eval(const FuzzyModel& model, std::span<const Scalar> x, std::span<const Scalar> y, Scalar t);

// Induced fuzzy norm N(x, t) = mu(x, x, t^2) for t > 0, else 0.
double fuzzy_norm_eval(const FuzzyModel& model, std::span<const Scalar> x, double t);

// sqrt(scale) * |x|.
double alpha_norm(const FuzzyModel& model, std::span<const Scalar> x, AlphaLevel alpha);

// inf{t > 0 : N(x, t) >= alpha} by bisection on the level function
// (absolute tolerance 1e-10 on t, at most 200 iterations).
double alpha_norm_bisection(const FuzzyModel& model, std::span<const Scalar> x, AlphaLevel alpha);

// scale * <x, y>.
Scalar alpha_inner(const FuzzyModel& model, std::span<const Scalar> x, std::span<const Scalar> y,
                   AlphaLevel alpha);

// Polarization identity evaluated from alpha_norm values. Real fields use
// only the real part of the identity.
Scalar alpha_inner_polarization(const FuzzyModel& model, std::span<const Scalar> x,
                                std::span<const Scalar> y, AlphaLevel alpha);

// --- axiom checks -----------------------------------------------------------

using Membership = std::function<double(std::span<const Scalar>, std::span<const Scalar>, Scalar)>;

struct AxiomViolation {
  std::string axiom;       // "FIP1" ... "FIP9"
  std::vector<Vector> points;
  std::vector<Scalar> parameters;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct AxiomReport {
  std::size_t samples = 0;
  std::map<std::string, std::size_t> violation_counts;  // every checked axiom appears
  std::vector<AxiomViolation> first_violations;         // one witness per violated axiom

  bool passed() const;
  bool violated(const std::string& axiom) const;
};

AxiomReport check_fip_axioms(const FuzzyModel& model, std::size_t sample_count, std::uint64_t seed);

// Same checks against an arbitrary membership function, used to exercise the
// checker itself on memberships that are not one of the two profiles.
AxiomReport check_fip_axioms(const Membership& mu, const BaseSpace& space, std::size_t sample_count,
                             std::uint64_t seed);

// --- orthonormality ---------------------------------------------------------

struct OrthonormalityResult {
  bool orthonormal = true;
  // First failing pair, when any.
  std::optional<std::size_t> first_index;
  std::optional<std::size_t> second_index;
  std::optional<double> alpha;
  Scalar value{};
  std::string failed_clause;  // "self" (<x,x> != 1) or "cross" (<x,y> != 0)
};

OrthonormalityResult orthonormal_check(const FuzzyModel& model, std::span<const Vector> family,
                                       AlphaLevel alpha, double tolerance = 1e-9);

// All-alpha mode over the grid 0.05, 0.10, ..., 0.95.
OrthonormalityResult orthonormal_check_all_alpha(const FuzzyModel& model, std::span<const Vector> family,
                                                 double tolerance = 1e-9);

struct ExpansionResidual {
  Vector coefficients;
  double expansion_residual = 0.0;  // |x - sum <x,e_k> e_k|
  double parseval_residual = 0.0;   // | |x|^2 - sum |<x,e_k>|^2 |
};

// Crisp profile only; throws PreconditionError otherwise or when the basis
// is not fuzzy orthonormal.
ExpansionResidual orthonormal_expansion_check(const FuzzyModel& model, std::span<const Vector> basis,
                                              std::span<const Scalar> x, AlphaLevel alpha);

std::string to_string(Field field);
std::string to_string(Profile profile);

}  // namespace fuzzyframes
