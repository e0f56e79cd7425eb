#include "fuzzyframes/frame_transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fuzzyframes/errors.hpp"
#include "fuzzyframes/operator_algebra.hpp"

namespace fuzzyframes {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

BoundCertificate require_kframe(const FrameFamily& family, const Matrix& k, const char* name) {
  BoundCertificate cert = optimal_kframe_bounds(family, k);
  if (!cert.has_lower_bound())
    throw PreconditionError(std::string("family is not a K-frame for ") + name);
  return cert;
}

DerivedBound make_bound(std::string tag, std::vector<std::pair<double, double>> sources, double lower, double upper,
                        const FrameFamily& family, const Matrix& target, std::span<const AlphaLevel> alphas) {
  DerivedBound out{std::move(tag), std::move(sources), lower, upper, target, {}};
  out.verification = verify_bounds(family, target, lower, upper, alphas);
  return out;
}

double inverse_or_zero(double value) { return std::isinf(value) ? 0.0 : 1.0 / value; }

double squared_norm(const Matrix& m) {
  const double n = spectral_norm(m);
  return n * n;
}

bool same_bound(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= kTightTolerance * std::max(1.0, std::abs(b));
}

}  // namespace

ClosureResult combine_scalar(const FrameFamily& family, const Matrix& k1, const Matrix& k2, Scalar a, Scalar b,
                             std::span<const AlphaLevel> alphas) {
  if (a == Scalar{} && b == Scalar{}) throw InputError("scalar pair (a, b) must not be (0, 0)");
  const BoundCertificate c1 = require_kframe(family, k1, "K1");
  const BoundCertificate c2 = require_kframe(family, k2, "K2");
  const Matrix target = a * k1 + b * k2;
  const double weight = std::max(std::norm(a), std::norm(b));
  const double denominator = weight * (inverse_or_zero(c1.lower) + inverse_or_zero(c2.lower));
  const double stated_lower = denominator == 0.0 ? kInfinity : 1.0 / denominator;
  const double upper = 0.5 * (c1.upper + c2.upper);
  const std::vector<std::pair<double, double>> sources{{c1.lower, c1.upper}, {c2.lower, c2.upper}};

  ClosureResult out{make_bound("scalar_combination", sources, stated_lower, upper, family, target, alphas),
                    std::nullopt, optimal_kframe_bounds(family, target), {}};
  // |a K1* f + b K2* f|^2 <= 2 max(|a|^2,|b|^2) (|K1* f|^2 + |K2* f|^2): the
  // stated constant drops the factor 2.
  out.corrected = make_bound("scalar_combination_corrected", sources, stated_lower / 2.0, upper, family, target,
                             alphas);
  out.notes.push_back("stated lower bound omits the factor 2 of the triangle-inequality step");
  return out;
}

ClosureResult combine_product(const FrameFamily& family, const Matrix& k1, const Matrix& k2,
                              std::span<const AlphaLevel> alphas) {
  const BoundCertificate c1 = require_kframe(family, k1, "K1");
  const BoundCertificate c2 = optimal_kframe_bounds(family, k2);
  const Matrix target = k1 * k2;
  const double k2_norm = squared_norm(k2);
  const double lower = k2_norm == 0.0 ? kInfinity : c1.lower / k2_norm;
  return {make_bound("product", {{c1.lower, c1.upper}, {c2.lower, c2.upper}}, lower, c1.upper, family, target,
                     alphas),
          std::nullopt, optimal_kframe_bounds(family, target), {}};
}

ClosureResult combine_many(const FrameFamily& family, std::span<const Matrix> operators,
                           std::optional<std::vector<Scalar>> coefficients, std::span<const AlphaLevel> alphas) {
  if (operators.empty()) throw InputError("combine_many needs at least one operator");
  if (coefficients && coefficients->size() != operators.size())
    throw InputError("one coefficient per operator is required");

  std::vector<std::pair<double, double>> sources;
  double common_lower = kInfinity;
  double common_upper = 0.0;
  for (std::size_t j = 0; j < operators.size(); ++j) {
    const BoundCertificate c = require_kframe(family, operators[j], "K_j");
    sources.emplace_back(c.lower, c.upper);
    common_lower = std::min(common_lower, c.lower);
    common_upper = std::max(common_upper, c.upper);
  }
  std::vector<std::string> notes;
  const bool shared = std::all_of(sources.begin(), sources.end(), [&](const auto& s) {
    return same_bound(s.first, common_lower) && same_bound(s.second, common_upper);
  });
  if (!shared) notes.push_back("operators have different bounds; using (min A_j, max B_j)");

  const std::size_t n = operators.size();
  if (coefficients) {
    Matrix target(family.dimension(), family.dimension());
    double weight = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      target += (*coefficients)[j] * operators[j];
      weight = std::max(weight, std::norm((*coefficients)[j]));
    }
    if (weight == 0.0) throw InputError("all coefficients are zero");
    const double nn = static_cast<double>(n);
    ClosureResult out{make_bound("linear_combination", sources, common_lower / (nn * weight), common_upper, family,
                                 target, alphas),
                      std::nullopt, optimal_kframe_bounds(family, target), notes};
    if (n > 1) {
      // Cauchy-Schwarz over n terms costs n^2, not n.
      out.corrected = make_bound("linear_combination_corrected", sources, common_lower / (nn * nn * weight),
                                 common_upper, family, target, alphas);
      out.notes.push_back("stated lower bound uses n where the estimate needs n^2");
    }
    return out;
  }

  Matrix target = operators[0];
  for (std::size_t j = 1; j < n; ++j) target = target * operators[j];
  double leading = 1.0;   // prod_{j < n} |K_j|^2
  double trailing = 1.0;  // prod_{j > 1} |K_j|^2
  for (std::size_t j = 0; j < n; ++j) {
    const double sq = squared_norm(operators[j]);
    if (j + 1 < n) leading *= sq;
    if (j > 0) trailing *= sq;
  }
  const auto divide = [](double a, double d) { return d == 0.0 ? kInfinity : a / d; };
  ClosureResult out{make_bound("product_many", sources, divide(common_lower, leading), common_upper, family, target,
                               alphas),
                    std::nullopt, optimal_kframe_bounds(family, target), notes};
  if (n > 1 && !same_bound(leading, trailing)) {
    // (K_1...K_n)* f = K_n* ... K_2* (K_1* f): the norms that peel off are
    // those of K_2 ... K_n.
    out.corrected = make_bound("product_many_corrected", sources, divide(common_lower, trailing), common_upper,
                               family, target, alphas);
    out.notes.push_back("stated product bound divides by |K_1|...|K_{n-1}|; K_1 K_2 ... K_n needs |K_2|...|K_n|");
  }
  return out;
}

BesselPairResult bessel_pair_kframe(const FrameFamily& f, const FrameFamily& g, const Matrix& k,
                                    std::span<const AlphaLevel> alphas) {
  if (f.size() != g.size() || f.dimension() != g.dimension())
    throw InputError("Bessel pair families must share index set and space");
  if (k.rows() != f.dimension() || k.cols() != f.dimension()) throw InputError("K has the wrong shape");
  const Matrix tf = synthesis_matrix(f);
  const Matrix tg = synthesis_matrix(g);
  const double tol = 1e-9 * (1.0 + spectral_norm(k));

  BesselPairResult out;
  out.bessel_first = optimal_frame_bounds(f).upper;
  out.bessel_second = optimal_frame_bounds(g).upper;
  const double forward = spectral_norm(tf * conj_transpose(tg) - k);
  const double swapped = spectral_norm(tg * conj_transpose(tf) - k);
  out.certified_first = forward <= tol;
  if (!out.certified_first && swapped > tol)
    throw HypothesisError("neither T_F T_G* = K nor T_G T_F* = K holds", std::min(forward, swapped));
  out.factorization_residual = out.certified_first ? forward : swapped;

  const double partner = out.certified_first ? out.bessel_second : out.bessel_first;
  const double own = out.certified_first ? out.bessel_first : out.bessel_second;
  const FrameFamily& certified = out.certified_first ? f : g;
  out.certificate.lower = partner == 0.0 ? kInfinity : 1.0 / partner;
  out.certificate.upper = own;
  out.certificate.kind = out.certificate.lower > 0.0 ? BoundKind::k_frame : BoundKind::bessel;
  out.verification = verify_bounds(certified, k, out.certificate.lower, out.certificate.upper, alphas);
  return out;
}

TransformResult transform_family(const FrameFamily& family, const Matrix& t, const Matrix& k,
                                 TransformVariant variant, std::span<const AlphaLevel> alphas) {
  const std::size_t n = family.dimension();
  if (t.rows() != n || t.cols() != n || k.rows() != n || k.cols() != n)
    throw InputError("T and K must be square with the family's dimension");
  const double t_norm = spectral_norm(t);
  const double k_norm = spectral_norm(k);
  const double commutation = spectral_norm(t * k - k * t);
  if (commutation > 1e-9 * (1.0 + t_norm * k_norm))
    throw HypothesisError("T does not commute with K", commutation);

  const BoundCertificate source = require_kframe(family, k, "K");
  double lower = source.lower;
  std::string tag;
  if (variant == TransformVariant::invertible) {
    const auto svd = singular_value_decomposition(t);
    const double smallest = svd.sigma.back();
    if (!(smallest > 1e-10 * svd.sigma.front())) throw HypothesisError("T is not invertible", smallest);
    lower = source.lower * smallest * smallest;  // A |T^-1|^-2
    tag = "invertible_transform";
  } else {
    const double defect = spectral_norm(t * conj_transpose(t) - Matrix::identity(n));
    if (defect > 1e-9 * (1.0 + t_norm * t_norm)) throw HypothesisError("T T* is not the identity", defect);
    tag = "coisometry_transform";
  }
  std::vector<Vector> moved;
  for (const auto& v : family.vectors()) moved.push_back(t * v);
  FrameFamily image(family.model(), std::move(moved));
  DerivedBound derived = make_bound(tag, {{source.lower, source.upper}}, lower, source.upper * t_norm * t_norm,
                                    image, k, alphas);
  BoundCertificate optimal = optimal_kframe_bounds(image, k);
  return {std::move(image), std::move(derived), optimal, commutation};
}

TransferResult operator_transfer(const FrameFamily& family, const Matrix& k, const Matrix& t,
                                 std::span<const AlphaLevel> alphas) {
  const BoundCertificate source = require_kframe(family, k, "K");
  if (t.rows() != family.dimension() || t.cols() != family.dimension()) throw InputError("T has the wrong shape");
  TransferResult out;
  out.lambda = douglas_lambda(t, k);
  const double lower = out.lambda == 0.0 ? kInfinity : source.lower / (out.lambda * out.lambda);
  out.derived = make_bound("operator_transfer", {{source.lower, source.upper}}, lower, source.upper, family, t, alphas);
  out.optimal = optimal_kframe_bounds(family, t);
  return out;
}

SynthesisReport synthesis_characterization(const FrameFamily& family, const Matrix& k) {
  SynthesisReport out;
  out.synthesis = synthesis_matrix(family);
  out.inclusion_residual = range_inclusion_residual(k, out.synthesis);
  out.range_included = out.inclusion_residual <= range_inclusion_tolerance(k);
  out.kframe = optimal_kframe_bounds(family, k);
  out.equivalence_holds = out.range_included == out.kframe.has_lower_bound();
  return out;
}

BuiltFamily build_family(const FuzzyModel& model, const Matrix& t, const Matrix& k,
                         std::span<const AlphaLevel> alphas) {
  if (t.rows() != model.dimension()) throw InputError("T must map into the model's space");
  BuiltFamily out{FrameFamily::from_columns(model, t), false, 0.0, squared_norm(t), {}};
  out.certified = douglas_range_inclusion(k, t);
  if (out.certified) {
    const double lambda = douglas_lambda(k, t);
    out.lower = lambda == 0.0 ? kInfinity : 1.0 / (lambda * lambda);
  }
  out.verification = verify_bounds(out.family, k, out.lower, out.upper, alphas);
  return out;
}

}  // namespace fuzzyframes
