#include "fuzzyframes/operator_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fuzzyframes/errors.hpp"

namespace fuzzyframes {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Rotation {
  Scalar pp, pq, qp, qq;
};

// Unitary W with W* [[a, b], [conj(b), d]] W diagonal.
Rotation jacobi_rotation(double a, Scalar b, double d) {
  const double r = std::abs(b);
  const Scalar phase = std::conj(b) / r;  // e^{-i arg b}
  const double tau = (d - a) / (2.0 * r);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  return {c, s, -s * phase, c * phase};
}

void rotate_columns(Matrix& m, std::size_t p, std::size_t q, const Rotation& w) {
  for (std::size_t k = 0; k < m.rows(); ++k) {
    const Scalar kp = m(k, p);
    const Scalar kq = m(k, q);
    m(k, p) = kp * w.pp + kq * w.qp;
    m(k, q) = kp * w.pq + kq * w.qq;
  }
}

void rotate_rows(Matrix& m, std::size_t p, std::size_t q, const Rotation& w) {
  for (std::size_t k = 0; k < m.cols(); ++k) {
    const Scalar pk = m(p, k);
    const Scalar qk = m(q, k);
    m(p, k) = std::conj(w.pp) * pk + std::conj(w.qp) * qk;
    m(q, k) = std::conj(w.pq) * pk + std::conj(w.qq) * qk;
  }
}

void require_square(const Matrix& m, const char* what) {
  if (!m.is_square()) throw InputError(std::string(what) + " must be square");
}

Matrix hermitian_part(const Matrix& m) {
  Matrix h = m + conj_transpose(m);
  h *= 0.5;
  return h;
}

double off_diagonal_mass(const Matrix& m) {
  double acc = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j) acc += std::norm(m(i, j));
  return std::sqrt(acc);
}

}  // namespace

HermitianEigen hermitian_eigen(const Matrix& hermitian) {
  require_square(hermitian, "eigen input");
  const std::size_t n = hermitian.rows();
  Matrix a = hermitian_part(hermitian);
  Matrix v = Matrix::identity(n);
  const double total = frobenius_norm(a);

  for (int sweep = 0; sweep < 100 && total > 0.0; ++sweep) {
    if (off_diagonal_mass(a) <= 1e-13 * total) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) <= 1e-300) continue;
        const Rotation w = jacobi_rotation(a(p, p).real(), a(p, q), a(q, q).real());
        rotate_columns(a, p, q, w);
        rotate_rows(a, p, q, w);
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        rotate_columns(v, p, q, w);
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
  HermitianEigen out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    out.vectors.set_column(k, v.column(order[k]));
  }
  return out;
}

SingularValueDecomposition singular_value_decomposition(const Matrix& m) {
  if (m.cols() > m.rows()) {
    SingularValueDecomposition t = singular_value_decomposition(conj_transpose(m));
    return {std::move(t.v), std::move(t.sigma), std::move(t.u)};
  }
  // One-sided Jacobi: orthogonalize the columns of G = M V.
  const std::size_t n = m.cols();
  Matrix g = m;
  Matrix v = Matrix::identity(n);
  for (int sweep = 0; sweep < 80; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0;
        Scalar gamma{};
        for (std::size_t i = 0; i < g.rows(); ++i) {
          alpha += std::norm(g(i, p));
          beta += std::norm(g(i, q));
          gamma += std::conj(g(i, p)) * g(i, q);
        }
        if (std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta) || std::abs(gamma) <= 1e-300) continue;
        const Rotation w = jacobi_rotation(alpha, gamma, beta);
        rotate_columns(g, p, q, w);
        rotate_columns(v, p, q, w);
        rotated = true;
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) sigma[j] = norm(g.column(j));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return sigma[i] > sigma[j]; });

  SingularValueDecomposition out{Matrix(m.rows(), n), std::vector<double>(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    out.sigma[k] = sigma[j];
    if (sigma[j] > 0.0) out.u.set_column(k, scaled(1.0 / sigma[j], g.column(j)));
    out.v.set_column(k, v.column(j));
  }
  return out;
}

double spectral_norm(const Matrix& m) {
  if (m.empty()) return 0.0;
  const auto svd = singular_value_decomposition(m);
  return svd.sigma.empty() ? 0.0 : svd.sigma.front();
}

namespace {

std::size_t rank_of(const std::vector<double>& sigma) {
  if (sigma.empty() || sigma.front() <= 0.0) return 0;
  const double cutoff = 1e-10 * sigma.front();
  return static_cast<std::size_t>(
      std::count_if(sigma.begin(), sigma.end(), [&](double s) { return s > cutoff; }));
}

}  // namespace

std::size_t numerical_rank(const Matrix& m) { return rank_of(singular_value_decomposition(m).sigma); }

Matrix adjoint(const Matrix& t) { return conj_transpose(t); }

double alpha_operator_norm(const Matrix& t) { return spectral_norm(t); }

double alpha_operator_norm_at_level(const Matrix& t, const FuzzyModel& domain, const FuzzyModel& codomain,
                                    AlphaLevel alpha) {
  if (t.cols() != domain.dimension() || t.rows() != codomain.dimension())
    throw InputError("operator shape does not match its spaces");
  return std::sqrt(codomain.scale(alpha) / domain.scale(alpha)) * spectral_norm(t);
}

double alpha_operator_norm(const Matrix& t, const FuzzyModel& domain, const FuzzyModel& codomain,
                           AlphaLevel alpha) {
  if (t.cols() != domain.dimension() || t.rows() != codomain.dimension())
    throw InputError("operator shape does not match its spaces");
  const double sigma = spectral_norm(t);
  if (domain.profile() == codomain.profile() || sigma == 0.0) return sigma;
  // The level ratio grows with beta for a crisp domain and blows up as beta
  // goes to 0 for a scaled domain.
  if (domain.profile() == Profile::crisp) return std::sqrt(codomain.scale(alpha)) * sigma;
  return kInfinity;
}

PsdOrderResult psd_order_check(const Matrix& p, const Matrix& q) {
  require_square(p, "P");
  require_square(q, "Q");
  if (p.rows() != q.rows()) throw InputError("P and Q must have the same size");
  const Matrix diff = q - p;
  PsdOrderResult out;
  out.symmetrized = max_abs(diff - conj_transpose(diff)) > 1e-12 * (1.0 + max_abs(diff));
  const HermitianEigen eig = hermitian_eigen(diff);
  double spread = 0.0;
  for (double value : eig.values) spread = std::max(spread, std::abs(value));
  out.min_eigenvalue = eig.values.front();
  out.tolerance = 1e-9 * (1.0 + spread);
  out.holds = out.min_eigenvalue >= -out.tolerance;
  out.witness = canonical_direction(eig.vectors.column(0));
  return out;
}

PseudoInverse pseudo_inverse(const Matrix& t) {
  const auto svd = singular_value_decomposition(t);
  const std::size_t rank = rank_of(svd.sigma);
  PseudoInverse out{Matrix(t.cols(), t.rows()), rank, Matrix(t.rows(), t.rows())};
  for (std::size_t k = 0; k < rank; ++k) {
    const Vector u = svd.u.column(k);
    const Vector v = svd.v.column(k);
    Matrix term = outer(v, u);
    term *= 1.0 / svd.sigma[k];
    out.dagger += term;
    out.range_projector += outer(u, u);
  }
  return out;
}

double PenroseResiduals::max() const {
  return std::max({t_dagger_t, dagger_t_dagger, left_hermitian, right_hermitian});
}

PenroseResiduals penrose_residuals(const Matrix& t, const Matrix& dagger) {
  const auto relative = [](const Matrix& residual, const Matrix& reference) {
    const double scale = spectral_norm(reference);
    return scale == 0.0 ? spectral_norm(residual) : spectral_norm(residual) / scale;
  };
  const Matrix left = t * dagger;
  const Matrix right = dagger * t;
  return {relative(left * t - t, t), relative(dagger * left - dagger, dagger),
          spectral_norm(conj_transpose(left) - left), spectral_norm(conj_transpose(right) - right)};
}

bool PencilExtreme::bounded() const { return std::isfinite(value); }

PencilExtreme pencil_sup(const Matrix& p, const Matrix& q) {
  require_square(p, "pencil numerator");
  require_square(q, "pencil denominator");
  if (p.rows() != q.rows()) throw InputError("pencil operands must have the same size");
  const std::size_t n = q.rows();
  const HermitianEigen qe = hermitian_eigen(q);
  const double q_top = std::max(0.0, qe.values.back());
  const double cutoff = 1e-10 * q_top;

  std::vector<std::size_t> range, kernel;
  for (std::size_t k = 0; k < n; ++k) (q_top > 0.0 && qe.values[k] > cutoff ? range : kernel).push_back(k);

  const Matrix ph = hermitian_part(p);
  const double p_scale = frobenius_norm(ph);

  if (!kernel.empty()) {
    Matrix z(n, kernel.size());
    for (std::size_t c = 0; c < kernel.size(); ++c) z.set_column(c, qe.vectors.column(kernel[c]));
    const HermitianEigen restricted = hermitian_eigen(conj_transpose(z) * ph * z);
    if (restricted.values.back() > 1e-9 * p_scale) {
      return {kInfinity, canonical_direction(z * restricted.vectors.column(kernel.size() - 1))};
    }
  }
  if (range.empty()) return {0.0, Vector(n)};

  Matrix basis(n, range.size());  // U_r diag(lambda_r^{-1/2})
  for (std::size_t c = 0; c < range.size(); ++c)
    basis.set_column(c, scaled(1.0 / std::sqrt(qe.values[range[c]]), qe.vectors.column(range[c])));
  const HermitianEigen pe = hermitian_eigen(conj_transpose(basis) * ph * basis);
  const Vector top = basis * pe.vectors.column(range.size() - 1);
  return {std::max(0.0, pe.values.back()), canonical_direction(top)};
}

double range_inclusion_tolerance(const Matrix& m) { return 1e-9 * (1.0 + spectral_norm(m)); }

double range_inclusion_residual(const Matrix& m, const Matrix& n) {
  if (m.rows() != n.rows()) throw InputError("range inclusion operands need the same codomain");
  const PseudoInverse np = pseudo_inverse(n);
  return spectral_norm(m - np.range_projector * m);
}

bool douglas_range_inclusion(const Matrix& m, const Matrix& n) {
  return range_inclusion_residual(m, n) <= range_inclusion_tolerance(m);
}

namespace {

Vector residual_witness(const Matrix& m, const Matrix& n) {
  const PseudoInverse np = pseudo_inverse(n);
  const Matrix residual = m - np.range_projector * m;
  const auto svd = singular_value_decomposition(residual);
  return canonical_direction(svd.u.column(0));
}

}  // namespace

double douglas_lambda(const Matrix& m, const Matrix& n) {
  const double residual = range_inclusion_residual(m, n);
  if (residual > range_inclusion_tolerance(m))
    throw HypothesisError("range(M) is not contained in range(N)", residual, residual_witness(m, n));
  const PencilExtreme extreme = pencil_sup(m * conj_transpose(m), n * conj_transpose(n));
  if (!extreme.bounded())
    throw HypothesisError("range(M M*) leaves range(N N*) at the eigenvalue cutoff", residual, extreme.witness);
  return std::sqrt(extreme.value);
}

Factorization douglas_factorize(const Matrix& m, const Matrix& n) {
  Factorization out;
  out.lambda = douglas_lambda(m, n);
  out.w = pseudo_inverse(n).dagger * m;
  out.residual = spectral_norm(n * out.w - m);
  return out;
}

}  // namespace fuzzyframes
