#include "fuzzyframes/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fuzzyframes/errors.hpp"
#include "fuzzyframes/operator_algebra.hpp"
#include "fuzzyframes/random.hpp"

namespace fuzzyframes {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

void require_lambdas(double lambda1, double lambda2) {
  if (!(lambda1 >= 0.0) || !(lambda2 >= 0.0)) throw InputError("perturbation constants must be nonnegative");
  if (!(lambda2 < 1.0)) throw InputError("lambda2 must be below 1");
}

// v(f) = |D f| - l1 |A f| - l2 |B f| on the unit sphere, with A = K1*, B = K2*.
struct MixedNormFunctional {
  Matrix difference;
  Matrix first;
  Matrix second;
  double lambda1;
  double lambda2;

  double value(const Vector& f) const {
    return norm(difference * f) - lambda1 * norm(first * f) - lambda2 * norm(second * f);
  }

  Vector gradient(const Vector& f) const {
    Vector g(f.size());
    const auto accumulate = [&](const Matrix& m, double weight) {
      const Vector mf = m * f;
      const double len = norm(mf);
      if (len == 0.0 || weight == 0.0) return;
      const Vector back = conj_transpose(m) * mf;
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += (weight / len) * back[i];
    };
    accumulate(difference, 1.0);
    accumulate(first, -lambda1);
    accumulate(second, -lambda2);
    return g;
  }
};

Vector project_to_tangent(const Vector& g, const Vector& f, Field field) {
  Vector out = subtract(g, scaled(inner(g, f).real(), f));
  if (field == Field::real)
    for (auto& v : out) v = v.real();
  return out;
}

void add_eigenvectors(std::vector<Vector>& seeds, const Matrix& hermitian, Field field) {
  const HermitianEigen eig = hermitian_eigen(hermitian);
  for (std::size_t k = 0; k < eig.values.size(); ++k) {
    Vector v = canonical_direction(eig.vectors.column(k));
    if (field == Field::real) {
      for (auto& entry : v) entry = entry.real();
      if (norm(v) == 0.0) continue;
      v = normalized(v);
    }
    seeds.push_back(std::move(v));
  }
}

SampledCheck maximize_violation(const MixedNormFunctional& functional, Field field, std::vector<Vector> seeds,
                                const PerturbationSampling& sampling, double tolerance) {
  const std::size_t n = functional.difference.cols();
  Rng rng(sampling.seed);
  SampledCheck out;
  out.tolerance = tolerance;
  out.max_violation = -kInfinity;

  // Keep the few best starting points for refinement.
  std::vector<std::pair<double, Vector>> best;
  const auto consider = [&](Vector f) {
    const double v = functional.value(f);
    ++out.evaluations;
    if (v > out.max_violation) {
      out.max_violation = v;
      out.witness = f;
    }
    best.emplace_back(v, std::move(f));
    if (best.size() > 16) {
      std::sort(best.begin(), best.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
      best.resize(4);
    }
  };
  for (auto& seed : seeds) consider(std::move(seed));
  for (std::size_t i = 0; i < sampling.samples; ++i) consider(rng.unit_vector(n, field));
  std::sort(best.begin(), best.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  if (best.size() > 4) best.resize(4);

  for (auto& [value, f] : best) {
    double step = 0.5;
    for (std::size_t it = 0; it < sampling.refinement_steps; ++it) {
      const Vector direction = project_to_tangent(functional.gradient(f), f, field);
      if (norm(direction) == 0.0) break;
      bool improved = false;
      while (step > 1e-12) {
        Vector trial = normalized(add(f, scaled(step / norm(direction), direction)));
        const double candidate = functional.value(trial);
        ++out.evaluations;
        if (candidate > value) {
          value = candidate;
          f = std::move(trial);
          step = std::min(1.0, step * 2.0);
          improved = true;
          break;
        }
        step *= 0.5;
      }
      if (!improved) break;
    }
    if (value > out.max_violation) {
      out.max_violation = value;
      out.witness = f;
    }
  }
  out.witness = canonical_direction(out.witness);
  out.verified = out.max_violation <= tolerance;
  return out;
}

SampledCheck sample_mixed_norm(const Matrix& k1, const Matrix& k2, double lambda1, double lambda2, Field field,
                               const PerturbationSampling& sampling) {
  const Matrix difference = k1 - k2;
  MixedNormFunctional functional{conj_transpose(difference), conj_transpose(k1), conj_transpose(k2), lambda1, lambda2};
  std::vector<Vector> seeds;
  add_eigenvectors(seeds, difference * conj_transpose(difference), field);
  add_eigenvectors(seeds, k1 * conj_transpose(k1), field);
  add_eigenvectors(seeds, k2 * conj_transpose(k2), field);
  const double tolerance = 1e-9 * (1.0 + spectral_norm(k1) + spectral_norm(k2));
  return maximize_violation(functional, field, std::move(seeds), sampling, tolerance);
}

}  // namespace

OperatorPerturbationReport check_operator_perturbation(const Matrix& k1, const Matrix& k2, double lambda1,
                                                       double lambda2, Field field,
                                                       const PerturbationSampling& sampling) {
  require_lambdas(lambda1, lambda2);
  if (!k1.is_square() || k1.rows() != k2.rows() || k1.cols() != k2.cols())
    throw InputError("K1 and K2 must be square matrices of the same size");
  OperatorPerturbationReport out;
  out.lambda1 = lambda1;
  out.lambda2 = lambda2;
  out.hypothesis = sample_mixed_norm(k1, k2, lambda1, lambda2, field, sampling);
  if (lambda2 == 0.0) {
    try {
      out.spectral_lambda1 = douglas_lambda(k1 - k2, k1);
      out.spectrally_certified = *out.spectral_lambda1 <= lambda1 * (1.0 + 1e-9) + 1e-12;
    } catch (const HypothesisError&) {
      // range(K1 - K2) leaves range(K1): no finite lambda1 works with lambda2 = 0.
    }
  }
  return out;
}

std::pair<double, double> derive_operator_perturbed_bounds(double lower, double upper, double lambda1,
                                                           double lambda2) {
  require_lambdas(lambda1, lambda2);
  const double ratio = (1.0 - lambda2) / (1.0 + lambda1);
  return {lower * ratio * ratio, upper};
}

FamilyPerturbation family_perturbation_constant(const FrameFamily& f, const FrameFamily& g) {
  if (f.size() != g.size() || !(f.model() == g.model()))
    throw InputError("families must have equal length and share a space");
  std::vector<Vector> differences;
  for (std::size_t i = 0; i < f.size(); ++i) differences.push_back(subtract(f.vectors()[i], g.vectors()[i]));
  const Matrix s_delta = classical_frame_operator(FrameFamily(f.model(), std::move(differences)));
  const PencilExtreme first = pencil_sup(s_delta, classical_frame_operator(f));
  const PencilExtreme second = pencil_sup(s_delta, classical_frame_operator(g));
  FamilyPerturbation out;
  out.versus_first = first.value;
  out.versus_second = second.value;
  out.constant = std::max(first.value, second.value);
  out.witness = first.value >= second.value ? first.witness : second.witness;
  out.stronger_than_hypothesis = out.constant <= 1.0;
  return out;
}

std::pair<double, double> derive_family_perturbed_bounds(double lower, double upper, double constant) {
  if (!(constant >= 0.0) || std::isinf(constant)) throw InputError("M must be a finite nonnegative number");
  const double factor = (std::sqrt(constant) + 1.0) * (std::sqrt(constant) + 1.0);
  return {lower / factor, upper * factor};
}

SampledCheck check_family_perturbation(const FrameFamily& f, const FrameFamily& g, double constant,
                                       std::size_t samples, std::uint64_t seed) {
  if (f.size() != g.size() || !(f.model() == g.model()))
    throw InputError("families must have equal length and share a space");
  const Matrix sf = classical_frame_operator(f);
  const Matrix sg = classical_frame_operator(g);
  std::vector<Vector> differences;
  for (std::size_t i = 0; i < f.size(); ++i) differences.push_back(subtract(f.vectors()[i], g.vectors()[i]));
  const Matrix sd = classical_frame_operator(FrameFamily(f.model(), std::move(differences)));
  const auto form = [](const Matrix& s, const Vector& v) { return inner(s * v, v).real(); };

  Rng rng(seed);
  SampledCheck out;
  out.max_violation = -kInfinity;
  out.tolerance = 1e-9;
  for (std::size_t i = 0; i < samples; ++i) {
    const Vector v = rng.unit_vector(f.dimension(), f.model().field());
    const double lhs = form(sd, v);
    const double rhs = constant * std::min(form(sf, v), form(sg, v));
    const double violation = (lhs - rhs) / std::max(1.0, std::abs(rhs));
    ++out.evaluations;
    if (violation > out.max_violation) {
      out.max_violation = violation;
      out.witness = v;
    }
  }
  out.witness = canonical_direction(out.witness);
  out.verified = out.max_violation <= out.tolerance;
  return out;
}

FrameEquivalence frame_equivalence_constant(const FrameFamily& f, const FrameFamily& g, std::size_t samples,
                                            std::uint64_t seed) {
  const BoundCertificate cf = optimal_frame_bounds(f);
  const BoundCertificate cg = optimal_frame_bounds(g);
  if (!cf.has_lower_bound() || !cg.has_lower_bound()) throw PreconditionError("both families must be frames");
  FrameEquivalence out;
  out.first_bounds = {cf.lower, cf.upper};
  out.second_bounds = {cg.lower, cg.upper};
  const double one = 1.0 + std::sqrt(cf.upper / cg.lower);
  const double two = 1.0 + std::sqrt(cg.upper / cf.lower);
  out.constant = std::max(one * one, two * two);
  out.hypothesis = check_family_perturbation(f, g, out.constant, samples, seed);
  return out;
}

IdentityPerturbationResult identity_perturbation_check(const FrameFamily& family, const Matrix& k, double lambda1,
                                                       double lambda2, std::span<const AlphaLevel> alphas,
                                                       const PerturbationSampling& sampling) {
  require_lambdas(lambda1, lambda2);
  if (!(lambda1 < 1.0)) throw InputError("the identity form needs lambda1 below 1");
  const BoundCertificate cert = optimal_kframe_bounds(family, k);
  if (!cert.has_lower_bound()) throw PreconditionError("family is not a K-frame");
  const Matrix identity = Matrix::identity(family.dimension());

  IdentityPerturbationResult out;
  out.hypothesis = sample_mixed_norm(k, identity, lambda1, lambda2, family.model().field(), sampling);
  if (!out.hypothesis.verified) return out;
  // A K-frame lower bound for K = 0 carries no information about I.
  const double source_lower = std::isinf(cert.lower) ? 0.0 : cert.lower;
  const auto [lower, upper] = derive_operator_perturbed_bounds(source_lower, cert.upper, lambda1, lambda2);
  out.lower = lower;
  out.upper = upper;
  out.verification = verify_bounds(family, identity, lower, upper, alphas);
  out.certified = lower > 0.0 && out.verification->passed;
  return out;
}

}  // namespace fuzzyframes
