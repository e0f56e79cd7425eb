#include "fuzzyframes/frame_core.hpp"

#include <cmath>
#include <limits>

#include "fuzzyframes/errors.hpp"
#include "fuzzyframes/operator_algebra.hpp"
#include "fuzzyframes/random.hpp"

namespace fuzzyframes {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

void require_operator(const FrameFamily& family, const Matrix& k) {
  if (k.rows() != family.dimension() || k.cols() != family.dimension())
    throw InputError("operator K must be square with the family's dimension");
}

void require_vector(const FrameFamily& family, std::span<const Scalar> f) {
  if (f.size() != family.dimension()) throw InputError("vector dimension does not match the family");
}

bool near(double a, double b) { return std::abs(a - b) <= kTightTolerance * std::max(1.0, std::abs(b)); }

BoundKind classify(double lower, double upper, bool frame_mode) {
  if (!(lower > 0.0)) return BoundKind::bessel;
  if (std::isfinite(lower) && near(lower, upper)) {
    return near(lower, 1.0) && near(upper, 1.0) ? BoundKind::parseval : BoundKind::tight;
  }
  return frame_mode ? BoundKind::frame : BoundKind::k_frame;
}

}  // namespace

std::string to_string(FrameSumConvention convention) {
  return convention == FrameSumConvention::once_per_alpha ? "once" : "squared";
}

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::bessel: return "bessel";
    case BoundKind::frame: return "frame";
    case BoundKind::k_frame: return "k_frame";
    case BoundKind::tight: return "tight";
    case BoundKind::parseval: return "parseval";
  }
  return "bessel";
}

FrameFamily::FrameFamily(FuzzyModel model, std::vector<Vector> vectors)
    : model_(model), vectors_(std::move(vectors)) {
  if (vectors_.empty()) throw InputError("frame family must not be empty");
  for (const auto& v : vectors_) {
    if (v.size() != model_.dimension()) throw InputError("family vector dimension does not match the model");
    if (model_.field() == Field::real)
      for (const auto& entry : v)
        if (entry.imag() != 0.0) throw InputError("complex entry in a real family");
  }
}

FrameFamily FrameFamily::from_columns(FuzzyModel model, const Matrix& columns) {
  std::vector<Vector> vectors;
  for (std::size_t c = 0; c < columns.cols(); ++c) vectors.push_back(columns.column(c));
  return FrameFamily(model, std::move(vectors));
}

Matrix synthesis_matrix(const FrameFamily& family) {
  return Matrix::from_columns(family.vectors(), family.dimension());
}

Vector analysis_apply(const FrameFamily& family, std::span<const Scalar> f, AlphaLevel alpha) {
  require_vector(family, f);
  Vector out;
  out.reserve(family.size());
  for (const auto& fi : family.vectors()) out.push_back(alpha_inner(family.model(), f, fi, alpha));
  return out;
}

Matrix classical_frame_operator(const FrameFamily& family) {
  const Matrix f = synthesis_matrix(family);
  return f * conj_transpose(f);
}

Matrix frame_operator(const FrameFamily& family, AlphaLevel alpha) {
  return family.model().scale(alpha) * classical_frame_operator(family);
}

double frame_sum(const FrameFamily& family, std::span<const Scalar> f, AlphaLevel alpha,
                 FrameSumConvention convention) {
  const Vector coefficients = analysis_apply(family, f, alpha);
  const double s = family.model().scale(alpha);
  double acc = 0.0;
  for (const auto& c : coefficients) acc += std::norm(c);
  // |<f,f_i>_alpha|^2 already carries scale^2; the once convention keeps one factor.
  return convention == FrameSumConvention::once_per_alpha ? acc / s : acc;
}

double frame_sum_multiplier(const FuzzyModel& model, AlphaLevel alpha, FrameSumConvention convention) {
  return convention == FrameSumConvention::once_per_alpha ? 1.0 : model.scale(alpha);
}

BoundCertificate optimal_frame_bounds(const FrameFamily& family) {
  const HermitianEigen eig = hermitian_eigen(classical_frame_operator(family));
  BoundCertificate out;
  const double top = std::max(0.0, eig.values.back());
  out.upper = top;
  out.lower = eig.values.front() > 1e-10 * top ? eig.values.front() : 0.0;
  out.kind = classify(out.lower, out.upper, true);
  out.lower_witness = canonical_direction(eig.vectors.column(0));
  out.upper_witness = canonical_direction(eig.vectors.column(eig.values.size() - 1));
  return out;
}

namespace {

BoundCertificate kframe_bounds_from_forms(const Matrix& sum_form, const Matrix& k_form, double norm_scale) {
  BoundCertificate out;
  const HermitianEigen eig = hermitian_eigen(sum_form);
  out.upper = std::max(0.0, eig.values.back()) / norm_scale;
  out.upper_witness = canonical_direction(eig.vectors.column(eig.values.size() - 1));
  // inf <S f,f>/<K K* f,f> = 1 / sup <K K* f,f>/<S f,f>
  const PencilExtreme extreme = pencil_sup(k_form, sum_form);
  if (!extreme.bounded()) {
    out.lower = 0.0;
  } else if (extreme.value == 0.0) {
    out.lower = kInfinity;
  } else {
    out.lower = 1.0 / extreme.value;
  }
  if (extreme.value != 0.0) out.lower_witness = extreme.witness;
  out.kind = classify(out.lower, out.upper, false);
  return out;
}

}  // namespace

BoundCertificate optimal_kframe_bounds(const FrameFamily& family, const Matrix& k) {
  require_operator(family, k);
  return kframe_bounds_from_forms(classical_frame_operator(family), k * conj_transpose(k), 1.0);
}

BoundCertificate optimal_kframe_bounds_at(const FrameFamily& family, const Matrix& k, AlphaLevel alpha,
                                          FrameSumConvention convention) {
  require_operator(family, k);
  const double s = family.model().scale(alpha);
  const double m = frame_sum_multiplier(family.model(), alpha, convention);
  const Matrix sum_form = m * frame_operator(family, alpha);
  const Matrix k_form = s * (k * conj_transpose(k));
  BoundCertificate out = kframe_bounds_from_forms(sum_form, k_form, s);
  out.convention = convention;
  out.alpha_independent = convention == FrameSumConvention::once_per_alpha || family.model().profile() == Profile::crisp;
  return out;
}

BoundVerification verify_bounds(const FrameFamily& family, const Matrix& k, double lower, double upper,
                                std::span<const AlphaLevel> alphas, FrameSumConvention convention) {
  require_operator(family, k);
  if (alphas.empty()) throw InputError("verify_bounds needs at least one alpha");
  if (lower < 0.0 || upper < 0.0 || std::isnan(lower) || std::isnan(upper))
    throw InputError("bounds must be nonnegative numbers");
  const Matrix classical = classical_frame_operator(family);
  const Matrix kk = k * conj_transpose(k);
  const std::size_t n = family.dimension();

  BoundVerification out;
  for (AlphaLevel alpha : alphas) {
    out.alphas.push_back(alpha.value());
    if (out.violation) continue;
    const Matrix sum_form = frame_sum_multiplier(family.model(), alpha, convention) * classical;
    if (std::isinf(lower)) {
      if (!is_zero(kk)) {
        const HermitianEigen eig = hermitian_eigen(kk);
        out.violation = BoundViolation{alpha.value(), "lower", -kInfinity,
                                       canonical_direction(eig.vectors.column(n - 1))};
      }
    } else if (lower > 0.0) {
      const PsdOrderResult check = psd_order_check(lower * kk, sum_form);
      if (!check.holds) out.violation = BoundViolation{alpha.value(), "lower", check.min_eigenvalue, check.witness};
    }
    if (!out.violation && std::isfinite(upper)) {
      const PsdOrderResult check = psd_order_check(sum_form, upper * Matrix::identity(n));
      if (!check.holds) out.violation = BoundViolation{alpha.value(), "upper", check.min_eigenvalue, check.witness};
    }
  }
  out.passed = !out.violation.has_value();
  return out;
}

FrameFamily rescale_to_parseval(const FrameFamily& family, const BoundCertificate& certificate) {
  if (!(certificate.lower > 0.0) || !std::isfinite(certificate.lower))
    throw PreconditionError("rescaling needs a positive finite lower bound");
  if (!near(certificate.lower, certificate.upper))
    throw PreconditionError("rescaling to Parseval needs a tight certificate");
  const double factor = 1.0 / std::sqrt(certificate.lower);
  std::vector<Vector> vectors;
  for (const auto& v : family.vectors()) vectors.push_back(scaled(factor, v));
  return FrameFamily(family.model(), std::move(vectors));
}

AtomicSystem atomic_system_from_operator(const FuzzyModel& model, const Matrix& k) {
  if (k.rows() != model.dimension() || k.cols() != model.dimension())
    throw InputError("operator K must be square with the model's dimension");
  FrameFamily family = FrameFamily::from_columns(model, k);
  BoundCertificate certificate;
  certificate.lower = 1.0;
  const double norm_k = spectral_norm(k);
  certificate.upper = norm_k * norm_k;
  certificate.lower_is_equality = true;
  certificate.kind = classify(certificate.lower, certificate.upper, false);
  return {std::move(family), certificate};
}

AtomicCoefficients atomic_coefficients(const FrameFamily& family, const Matrix& k, std::span<const Scalar> f) {
  require_operator(family, k);
  require_vector(family, f);
  const Matrix synthesis = synthesis_matrix(family);
  const double residual = range_inclusion_residual(k, synthesis);
  if (residual > range_inclusion_tolerance(k))
    throw HypothesisError("range(K) is not contained in the span of the family", residual);
  const Matrix coefficient_map = pseudo_inverse(synthesis).dagger * k;
  AtomicCoefficients out;
  out.beta = coefficient_map * f;
  out.bound_constant = spectral_norm(coefficient_map);
  out.residual = norm(subtract(k * f, synthesis * out.beta));
  return out;
}

AtomicEquivalence atomic_system_equivalence_check(const FrameFamily& family, const Matrix& k) {
  require_operator(family, k);
  AtomicEquivalence out;
  out.kframe = optimal_kframe_bounds(family, k);
  out.is_kframe = out.kframe.has_lower_bound();
  const Matrix synthesis = synthesis_matrix(family);
  out.inclusion_residual = range_inclusion_residual(k, synthesis);
  out.coefficients_exist = out.inclusion_residual <= range_inclusion_tolerance(k);
  if (out.coefficients_exist) {
    out.bound_constant = spectral_norm(pseudo_inverse(synthesis).dagger * k);
    const double implied = out.bound_constant == 0.0 ? kInfinity : 1.0 / (out.bound_constant * out.bound_constant);
    out.constant_consistent =
        std::isinf(implied) ? std::isinf(out.kframe.lower)
                            : out.kframe.lower >= implied - 1e-9 * std::max(1.0, implied);
  }
  return out;
}

RestrictedInverseReport restricted_inverse_check(const FrameFamily& family, const Matrix& k,
                                                 std::size_t sample_count, std::uint64_t seed) {
  require_operator(family, k);
  const BoundCertificate cert = optimal_kframe_bounds(family, k);
  if (!cert.has_lower_bound()) throw PreconditionError("family has no K-frame lower bound");
  RestrictedInverseReport report;
  report.samples = sample_count;
  if (is_zero(k)) return report;

  const Matrix s = classical_frame_operator(family);
  const PseudoInverse k_pinv = pseudo_inverse(k);
  report.k_dagger_norm = spectral_norm(k_pinv.dagger);
  const double kd2 = report.k_dagger_norm * report.k_dagger_norm;
  const double a = cert.lower;
  const double b = cert.upper;
  // Inverse of S restricted to range(K), landing back in range(K).
  const Matrix restricted_inverse = pseudo_inverse(s * k_pinv.range_projector).dagger;

  Rng rng(seed);
  const auto note = [&](double lhs, double rhs, const Vector& where) {
    const double margin = (rhs - lhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
    if (margin >= -1e-9) return;
    ++report.violations;
    if (margin < report.worst_margin) {
      report.worst_margin = margin;
      report.witness = canonical_direction(where);
    }
  };
  for (std::size_t i = 0; i < sample_count; ++i) {
    const Vector u = k * rng.vector(family.dimension(), family.model().field());
    const double uu = norm_squared(u);
    const double su = inner(s * u, u).real();
    note(a / kd2 * uu, su, u);
    note(su, b * uu, u);

    const Vector f = s * u;
    const double ff = norm_squared(f);
    const double inv_form = inner(restricted_inverse * f, f).real();
    note(ff / b, inv_form, f);
    note(inv_form, kd2 / a * ff, f);
  }
  return report;
}

Matrix frame_operator_inverse(const FrameFamily& family, AlphaLevel alpha) {
  const HermitianEigen eig = hermitian_eigen(frame_operator(family, alpha));
  const double top = eig.values.back();
  if (!(top > 0.0) || eig.values.front() <= 1e-10 * top)
    throw SingularOperatorError("frame operator is singular", eig.values.front(),
                                canonical_direction(eig.vectors.column(0)));
  const std::size_t n = family.dimension();
  Matrix inv(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    Matrix term = outer(eig.vectors.column(k), eig.vectors.column(k));
    term *= 1.0 / eig.values[k];
    inv += term;
  }
  return inv;
}

Reconstruction reconstruct(const FrameFamily& family, std::span<const Scalar> f, AlphaLevel alpha) {
  require_vector(family, f);
  const Matrix s_inv = frame_operator_inverse(family, alpha);
  const FuzzyModel& model = family.model();
  Reconstruction out;
  out.from_dual_analysis = Vector(f.size());
  out.from_dual_synthesis = Vector(f.size());
  for (const auto& fi : family.vectors()) {
    const Vector dual = s_inv * fi;
    const Scalar c1 = alpha_inner(model, f, dual, alpha);
    const Scalar c2 = alpha_inner(model, f, fi, alpha);
    for (std::size_t j = 0; j < f.size(); ++j) {
      out.from_dual_analysis[j] += c1 * fi[j];
      out.from_dual_synthesis[j] += c2 * dual[j];
    }
  }
  out.analysis_residual = norm(subtract(out.from_dual_analysis, f));
  out.synthesis_residual = norm(subtract(out.from_dual_synthesis, f));
  return out;
}

}  // namespace fuzzyframes
