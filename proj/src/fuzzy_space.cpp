#include "fuzzyframes/fuzzy_space.hpp"

#include <algorithm>
#include <cmath>

#include "fuzzyframes/errors.hpp"
#include "fuzzyframes/random.hpp"

namespace fuzzyframes {

namespace {

constexpr double kImagTolerance = 1e-12;
constexpr double kAxiomTolerance = 1e-12;

void require_dimension(const FuzzyModel& model, std::span<const Scalar> x) {
  if (x.size() != model.dimension()) throw InputError("vector dimension does not match the model");
}

std::optional<double> positive_real(Scalar t) {
  if (std::abs(t.imag()) > kImagTolerance || t.real() <= 0.0) return std::nullopt;
  return t.real();
}

}  // namespace

AlphaLevel::AlphaLevel(double value) : value_(value) {
  if (!(value > 0.0 && value < 1.0)) throw InputError("alpha must lie strictly between 0 and 1");
}

std::vector<AlphaLevel> make_alphas(std::span<const double> values) {
  std::vector<AlphaLevel> out;
  out.reserve(values.size());
  for (double v : values) out.emplace_back(v);
  return out;
}

BaseSpace::BaseSpace(std::size_t dimension, Field field) : dimension_(dimension), field_(field) {
  if (dimension == 0) throw InputError("dimension must be positive");
}

double FuzzyModel::scale(AlphaLevel alpha) const noexcept {
  if (profile_ == Profile::crisp) return 1.0;
  return alpha.value() / (1.0 - alpha.value());
}

double mu_eval(const FuzzyModel& model, std::span<const Scalar> x, std::span<const Scalar> y, Scalar t) {
  require_dimension(model, x);
  require_dimension(model, y);
  const auto level = positive_real(t);
  if (!level) return 0.0;
  const double threshold = norm(x) * norm(y);
  if (*level <= threshold) return 0.0;
  if (model.profile() == Profile::crisp) return 1.0;
  return *level / (*level + threshold);
}

double fuzzy_norm_eval(const FuzzyModel& model, std::span<const Scalar> x, double t) {
  require_dimension(model, x);
  if (t <= 0.0) return 0.0;
  return mu_eval(model, x, x, t * t);
}

double alpha_norm(const FuzzyModel& model, std::span<const Scalar> x, AlphaLevel alpha) {
  require_dimension(model, x);
  return std::sqrt(model.scale(alpha)) * norm(x);
}

double alpha_norm_bisection(const FuzzyModel& model, std::span<const Scalar> x, AlphaLevel alpha) {
  require_dimension(model, x);
  const auto reaches = [&](double t) { return fuzzy_norm_eval(model, x, t) >= alpha.value(); };
  double lo = 0.0;
  double hi = std::max(1.0, norm(x));
  for (int i = 0; i < 200 && !reaches(hi); ++i) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-10; ++i) {
    const double mid = 0.5 * (lo + hi);
    (reaches(mid) ? hi : lo) = mid;
  }
  return hi;
}

Scalar alpha_inner(const FuzzyModel& model, std::span<const Scalar> x, std::span<const Scalar> y,
                   AlphaLevel alpha) {
  require_dimension(model, x);
  require_dimension(model, y);
  return model.scale(alpha) * inner(x, y);
}

Scalar alpha_inner_polarization(const FuzzyModel& model, std::span<const Scalar> x,
                                std::span<const Scalar> y, AlphaLevel alpha) {
  const auto sq = [&](const Vector& v) {
    const double n = alpha_norm(model, v, alpha);
    return n * n;
  };
  const double re = 0.25 * (sq(add(x, y)) - sq(subtract(x, y)));
  if (model.field() == Field::real) return re;
  const Vector iy = scaled(Scalar{0.0, 1.0}, y);
  const double im = 0.25 * (sq(add(x, iy)) - sq(subtract(x, iy)));
  return {re, im};
}

// --- axiom checks -----------------------------------------------------------

bool AxiomReport::passed() const {
  return std::all_of(violation_counts.begin(), violation_counts.end(),
                     [](const auto& entry) { return entry.second == 0; });
}

bool AxiomReport::violated(const std::string& axiom) const {
  const auto it = violation_counts.find(axiom);
  return it != violation_counts.end() && it->second > 0;
}

namespace {

class AxiomSampler {
 public:
  AxiomSampler(const BaseSpace& space, std::uint64_t seed) : space_(space), rng_(seed) {}

  Vector point() {
    if (rng_.uniform() < 0.05) return Vector(space_.dimension());
    return scaled(std::exp(rng_.uniform(-1.5, 1.5)), rng_.vector(space_.dimension(), space_.field()));
  }

  Vector nonzero_point() {
    Vector v = point();
    while (norm(v) == 0.0) v = point();
    return v;
  }

  Scalar field_scalar() {
    Scalar c = rng_.scalar(space_.field());
    while (std::abs(c) == 0.0) c = rng_.scalar(space_.field());
    return c;
  }

  // Positive magnitude spread around a threshold so both branches are hit.
  double magnitude_near(double threshold) {
    const double spread = std::exp(rng_.uniform(-1.0, 1.0));
    return threshold > 0.0 ? threshold * spread : spread;
  }

  Scalar complex_parameter(double magnitude) {
    const double angle = rng_.uniform(0.0, 6.283185307179586);
    return std::polar(magnitude, angle);
  }

  // A parameter outside the positive reals.
  Scalar non_positive_parameter(double magnitude) {
    switch (rng_.index(3)) {
      case 0: return -magnitude;
      case 1: return 0.0;
      default: return {rng_.normal() * magnitude, magnitude * (0.5 + rng_.uniform())};
    }
  }

  double uniform(double lo, double hi) { return rng_.uniform(lo, hi); }
  bool coin() { return rng_.uniform() < 0.5; }

 private:
  BaseSpace space_;
  Rng rng_;
};

class AxiomLedger {
 public:
  explicit AxiomLedger(AxiomReport& report) : report_(report) {}

  void checked(const std::string& axiom) { report_.violation_counts.try_emplace(axiom, 0); }

  void expect_ge(const std::string& axiom, double lhs, double rhs, std::vector<Vector> points,
                 std::vector<Scalar> parameters) {
    checked(axiom);
    if (lhs >= rhs - kAxiomTolerance) return;
    record(axiom, lhs, rhs, std::move(points), std::move(parameters));
  }

  void expect_eq(const std::string& axiom, double lhs, double rhs, std::vector<Vector> points,
                 std::vector<Scalar> parameters) {
    checked(axiom);
    if (std::abs(lhs - rhs) <= kAxiomTolerance) return;
    record(axiom, lhs, rhs, std::move(points), std::move(parameters));
  }

  void fail(const std::string& axiom, double lhs, double rhs, std::vector<Vector> points,
            std::vector<Scalar> parameters) {
    checked(axiom);
    record(axiom, lhs, rhs, std::move(points), std::move(parameters));
  }

 private:
  void record(const std::string& axiom, double lhs, double rhs, std::vector<Vector> points,
              std::vector<Scalar> parameters) {
    if (report_.violation_counts[axiom]++ > 0) return;
    report_.first_violations.push_back({axiom, std::move(points), std::move(parameters), lhs, rhs});
  }

  AxiomReport& report_;
};

double scalar_magnitude(Scalar s) { return std::abs(s); }

}  // namespace

AxiomReport check_fip_axioms(const Membership& mu, const BaseSpace& space, std::size_t sample_count,
                             std::uint64_t seed) {
  if (sample_count == 0) throw InputError("sample_count must be at least 1");
  AxiomReport report;
  report.samples = sample_count;
  AxiomLedger ledger(report);
  AxiomSampler sample(space, seed);

  for (std::size_t k = 0; k < sample_count; ++k) {
    {  // FIP1
      const Vector x = sample.point(), y = sample.point(), z = sample.point();
      const Scalar t = sample.complex_parameter(sample.magnitude_near(norm(x) * norm(z)));
      const Scalar s = sample.complex_parameter(sample.magnitude_near(norm(y) * norm(z)));
      const double lhs = mu(add(x, y), z, std::abs(t) + std::abs(s));
      const double rhs = std::min(mu(x, z, std::abs(t)), mu(y, z, std::abs(s)));
      ledger.expect_ge("FIP1", lhs, rhs, {x, y, z}, {t, s});
    }
    {  // FIP2
      const Vector x = sample.point(), y = sample.point();
      const Scalar s = sample.complex_parameter(sample.magnitude_near(norm(x)));
      const Scalar t = sample.complex_parameter(sample.magnitude_near(norm(y)));
      const double lhs = mu(x, y, std::abs(s * t));
      const double rhs = std::min(mu(x, x, std::norm(s)), mu(y, y, std::norm(t)));
      ledger.expect_ge("FIP2", lhs, rhs, {x, y}, {s, t});
    }
    {  // FIP3
      const Vector x = sample.point(), y = sample.point();
      const double magnitude = sample.magnitude_near(norm(x) * norm(y));
      const Scalar t = sample.coin() ? Scalar{magnitude} : sample.complex_parameter(magnitude);
      ledger.expect_eq("FIP3", mu(x, y, t), mu(y, x, std::conj(t)), {x, y}, {t});
    }
    {  // FIP4
      const Vector x = sample.point(), y = sample.point();
      const Scalar c = sample.field_scalar();
      const double magnitude = sample.magnitude_near(scalar_magnitude(c) * norm(x) * norm(y));
      const Scalar t = sample.coin() ? Scalar{magnitude} : sample.complex_parameter(magnitude);
      ledger.expect_eq("FIP4", mu(scaled(c, x), y, t), mu(x, y, t / std::abs(c)), {x, y}, {c, t});
    }
    {  // FIP5
      const Vector x = sample.point();
      const Scalar t = sample.non_positive_parameter(sample.magnitude_near(norm_squared(x)));
      ledger.expect_eq("FIP5", mu(x, x, t), 0.0, {x}, {t});
    }
    {  // FIP6: mu(x,x,t) = 1 for all t > 0 iff x = 0
      const Vector x = sample.point();
      const double sq = norm_squared(x);
      if (sq == 0.0) {
        const double t = std::exp(sample.uniform(-6.0, 6.0));
        ledger.expect_eq("FIP6", mu(x, x, t), 1.0, {x}, {t});
      } else {
        bool below_one = false;
        double smallest = 1.0;
        for (int e = -6; e <= 6 && !below_one; ++e) {
          const double value = mu(x, x, sq * std::pow(10.0, e));
          smallest = std::min(smallest, value);
          below_one = value < 1.0 - kAxiomTolerance;
        }
        if (below_one) ledger.checked("FIP6");
        else ledger.fail("FIP6", smallest, 1.0, {x}, {});
      }
    }
    {  // FIP7: monotone in t, and mu(cx, x, t) -> 1
      const Vector x = sample.point();
      const double scale = sample.magnitude_near(norm_squared(x));
      double t1 = scale * sample.uniform(-1.0, 3.0);
      double t2 = scale * sample.uniform(-1.0, 3.0);
      if (t1 > t2) std::swap(t1, t2);
      ledger.expect_ge("FIP7", mu(x, x, t2), mu(x, x, t1), {x}, {t1, t2});
      const Scalar c = sample.field_scalar();
      const Vector cx = scaled(c, x);
      const double far = 1e9 * (1.0 + norm(cx) * norm(x));
      ledger.expect_ge("FIP7", mu(cx, x, far), 1.0 - 1e-6, {cx, x}, {far});
    }
    {  // FIP8: x != 0 must have some t > 0 with mu(x, x, t^2) = 0
      const Vector x = sample.nonzero_point();
      const double len = norm(x);
      double smallest = 1.0;
      for (int e = 0; e <= 12 && smallest > 0.0; ++e) {
        const double t = len * std::pow(10.0, -e);
        smallest = std::min(smallest, mu(x, x, t * t));
      }
      if (smallest <= 0.0) ledger.checked("FIP8");
      else ledger.fail("FIP8", smallest, 0.0, {x}, {});
    }
    {  // FIP9, as stated
      const Vector x = sample.point(), y = sample.point();
      const double p = (sample.coin() ? 1.0 : -1.0) * sample.magnitude_near(norm(x));
      const double q = (sample.coin() ? 1.0 : -1.0) * sample.magnitude_near(norm(y));
      const double lhs = std::min(mu(add(x, y), add(x, y), 2.0 * q * q),
                                  mu(subtract(x, y), subtract(x, y), 2.0 * p * p));
      const double rhs = std::min(mu(x, x, p * p), mu(y, y, q * q));
      ledger.expect_ge("FIP9", lhs, rhs, {x, y}, {p, q});
    }
  }
  return report;
}

AxiomReport check_fip_axioms(const FuzzyModel& model, std::size_t sample_count, std::uint64_t seed) {
  const Membership mu = [&model](std::span<const Scalar> x, std::span<const Scalar> y, Scalar t) {
    return mu_eval(model, x, y, t);
  };
  return check_fip_axioms(mu, model.space(), sample_count, seed);
}

// --- orthonormality ---------------------------------------------------------

OrthonormalityResult orthonormal_check(const FuzzyModel& model, std::span<const Vector> family,
                                       AlphaLevel alpha, double tolerance) {
  if (family.empty()) throw InputError("orthonormality check needs a nonempty family");
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = 0; j < family.size(); ++j) {
      const Scalar value = alpha_inner(model, family[i], family[j], alpha);
      const Scalar target = i == j ? 1.0 : 0.0;
      if (std::abs(value - target) > tolerance) {
        return {false, i, j, alpha.value(), value, i == j ? "self" : "cross"};
      }
    }
  }
  return {};
}

OrthonormalityResult orthonormal_check_all_alpha(const FuzzyModel& model, std::span<const Vector> family,
                                                 double tolerance) {
  for (int k = 1; k <= 19; ++k) {
    auto result = orthonormal_check(model, family, AlphaLevel(0.05 * k), tolerance);
    if (!result.orthonormal) return result;
  }
  return {};
}

ExpansionResidual orthonormal_expansion_check(const FuzzyModel& model, std::span<const Vector> basis,
                                              std::span<const Scalar> x, AlphaLevel alpha) {
  if (model.profile() != Profile::crisp)
    throw PreconditionError("orthonormal expansion applies to the crisp profile only");
  require_dimension(model, x);
  if (!orthonormal_check_all_alpha(model, basis).orthonormal)
    throw PreconditionError("basis is not fuzzy orthonormal");

  ExpansionResidual out;
  Vector expansion(x.size());
  double coefficient_energy = 0.0;
  for (const auto& e : basis) {
    const Scalar c = alpha_inner(model, x, e, alpha);
    out.coefficients.push_back(c);
    coefficient_energy += std::norm(c);
    for (std::size_t i = 0; i < x.size(); ++i) expansion[i] += c * e[i];
  }
  out.expansion_residual = norm(subtract(x, expansion));
  const double length = alpha_norm(model, x, alpha);
  out.parseval_residual = std::abs(length * length - coefficient_energy);
  return out;
}

std::string to_string(Field field) { return field == Field::real ? "real" : "complex"; }
std::string to_string(Profile profile) { return profile == Profile::scaled ? "scaled" : "crisp"; }

}  // namespace fuzzyframes
