#pragma once

#include <cstddef>
#include <vector>

#include "fuzzyframes/fuzzy_space.hpp"
#include "fuzzyframes/linalg.hpp"

namespace fuzzyframes {

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending.
struct HermitianEigen {
  std::vector<double> values;
  Matrix vectors;  // column k pairs with values[k]
};

// Cyclic Jacobi; stops once the off-diagonal Frobenius mass falls below
// 1e-13 of the total. The input is symmetrized first.
HermitianEigen hermitian_eigen(const Matrix& hermitian);

/// Thin SVD, singular values descending: T = U diag(sigma) V*.
struct SingularValueDecomposition {
  Matrix u;
  std::vector<double> sigma;
  Matrix v;
};

SingularValueDecomposition singular_value_decomposition(const Matrix& m);

double spectral_norm(const Matrix& m);

// Number of singular values above 1e-10 * sigma_max.
std::size_t numerical_rank(const Matrix& m);

Matrix adjoint(const Matrix& t);

// Per-level ratio sup |Tx|_alpha / |x|_alpha for the given domain and
// codomain profiles: sqrt(scale_cod / scale_dom) * sigma_max.
double alpha_operator_norm_at_level(const Matrix& t, const FuzzyModel& domain, const FuzzyModel& codomain,
                                    AlphaLevel alpha);

// Strong fuzzy norm: supremum of the per-level ratio over levels beta <= alpha.
// +inf for a scaled domain with a crisp codomain.
double alpha_operator_norm(const Matrix& t, const FuzzyModel& domain, const FuzzyModel& codomain,
                           AlphaLevel alpha);

// Same profile on both sides: the largest singular value.
double alpha_operator_norm(const Matrix& t);

struct PsdOrderResult {
  bool holds = false;          // P <= Q
  double min_eigenvalue = 0.0; // of Q - P
  double tolerance = 0.0;
  Vector witness;              // unit eigenvector for min_eigenvalue
  bool symmetrized = false;    // Q - P was not Hermitian and was symmetrized
};

// P <= Q in the Loewner order: lambda_min(Q - P) >= -1e-9 (1 + |Q - P|).
PsdOrderResult psd_order_check(const Matrix& p, const Matrix& q);

struct PseudoInverse {
  Matrix dagger;
  std::size_t rank = 0;
  Matrix range_projector;  // T T^dagger
};

PseudoInverse pseudo_inverse(const Matrix& t);

struct PenroseResiduals {
  double t_dagger_t = 0.0;       // |T T+ T - T| / |T|
  double dagger_t_dagger = 0.0;  // |T+ T T+ - T+| / |T+|
  double left_hermitian = 0.0;   // |(T T+)* - T T+|
  double right_hermitian = 0.0;  // |(T+ T)* - T+ T|
  double max() const;
};

PenroseResiduals penrose_residuals(const Matrix& t, const Matrix& dagger);

/// Extreme value of <P f, f> / <Q f, f> for Hermitian PSD P, Q.
struct PencilExtreme {
  double value = 0.0;  // +inf when P does not vanish on ker Q
  Vector witness;      // unit maximizer (or kernel direction when unbounded)
  bool bounded() const;
};

// sup over f with Qf != 0 of <Pf,f>/<Qf,f>, computed on range(Q) through the
// inverse square root of Q's nonzero eigenvalues.
PencilExtreme pencil_sup(const Matrix& p, const Matrix& q);

// |(I - N N+) M|.
double range_inclusion_residual(const Matrix& m, const Matrix& n);
double range_inclusion_tolerance(const Matrix& m);

// range(M) subset of range(N).
bool douglas_range_inclusion(const Matrix& m, const Matrix& n);

// Smallest lambda with M M* <= lambda^2 N N*. Throws HypothesisError when the
// range inclusion fails.
double douglas_lambda(const Matrix& m, const Matrix& n);

struct Factorization {
  double lambda = 0.0;
  Matrix w;               // N+ M
  double residual = 0.0;  // |N W - M|
};

Factorization douglas_factorize(const Matrix& m, const Matrix& n);

}  // namespace fuzzyframes
