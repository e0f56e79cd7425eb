#include <doctest.h>

#include "fuzzyframes/errors.hpp"
#include "fuzzyframes/operator_algebra.hpp"
#include "oracles.hpp"

using namespace fuzzyframes;

namespace {

Matrix diag(std::initializer_list<double> values) {
  const std::vector<double> v(values);
  return Matrix::diagonal(v);
}

double distance(const Matrix& a, const Matrix& b) { return frobenius_norm(a - b); }

}  // namespace

TEST_CASE("hermitian eigendecomposition reproduces its input") {
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 1 + rng.index(8);
    const Matrix g = rng.matrix(n, n, Field::complex);
    const Matrix h = g + conj_transpose(g);
    const auto eig = hermitian_eigen(h);
    CHECK(std::is_sorted(eig.values.begin(), eig.values.end()));
    const Matrix rebuilt = eig.vectors * Matrix::diagonal(eig.values) * conj_transpose(eig.vectors);
    CHECK(distance(rebuilt, h) <= 1e-10 * (1 + frobenius_norm(h)));
    CHECK(distance(conj_transpose(eig.vectors) * eig.vectors, Matrix::identity(n)) <= 1e-10);
  }
}

TEST_CASE("singular values agree with power iteration") {
  Rng rng(2);
  for (int i = 0; i < 30; ++i) {
    const Matrix t = rng.matrix(1 + rng.index(6), 1 + rng.index(6), Field::complex);
    const auto svd = singular_value_decomposition(t);
    CHECK(std::is_sorted(svd.sigma.rbegin(), svd.sigma.rend()));
    CHECK(std::abs(svd.sigma.front() - oracle::power_norm(t, i)) <= 1e-8 * svd.sigma.front());
  }
  CHECK(numerical_rank(oracle::random_rank(rng, 5, 4, 2, Field::real)) == 2);
  CHECK(numerical_rank(Matrix(3, 3)) == 0);
}

TEST_CASE("adjoint") {
  CHECK(distance(adjoint(diag({2, 3, 6})), diag({2, 3, 6})) == 0.0);
  const Scalar i(0.0, 1.0);
  const Matrix t{{0.0, i}, {0.0, 0.0}};
  const Matrix expected{{0.0, 0.0}, {-i, 0.0}};
  CHECK(distance(adjoint(t), expected) == 0.0);

  Rng rng(3);
  const Matrix a = rng.matrix(4, 4, Field::complex);
  const Matrix b = rng.matrix(4, 4, Field::complex);
  CHECK(distance(adjoint(adjoint(a)), a) == 0.0);
  CHECK(distance(adjoint(a + b), adjoint(a) + adjoint(b)) <= 1e-14);
  CHECK(distance(adjoint(i * a), std::conj(i) * adjoint(a)) <= 1e-14);
  const FuzzyModel model(BaseSpace(4, Field::complex), Profile::scaled);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const Vector x = rng.vector(4, Field::complex);
    const Vector y = rng.vector(4, Field::complex);
    const AlphaLevel alpha(rng.uniform(0.05, 0.95));
    worst = std::max(worst, std::abs(alpha_inner(model, x, a * y, alpha) - alpha_inner(model, adjoint(a) * x, y, alpha)));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("alpha operator norms") {
  CHECK(alpha_operator_norm(diag({2, 3, 6})) == doctest::Approx(6.0));
  CHECK(alpha_operator_norm(Matrix::identity(4)) == doctest::Approx(1.0));
  const FuzzyModel scaled(BaseSpace(3, Field::real), Profile::scaled);
  const FuzzyModel crisp(BaseSpace(3, Field::real), Profile::crisp);
  const Matrix d = diag({2, 3, 6});
  double first = alpha_operator_norm(d, scaled, scaled, AlphaLevel(0.05));
  for (double a = 0.05; a < 0.96; a += 0.05)
    CHECK(std::abs(alpha_operator_norm(d, scaled, scaled, AlphaLevel(a)) - first) <= 1e-12 * first);
  // Crisp codomain over a scaled domain: the per-level ratio carries 1/sqrt(s).
  CHECK(alpha_operator_norm_at_level(d, scaled, crisp, AlphaLevel(0.8)) == doctest::Approx(3.0));
  CHECK(alpha_operator_norm_at_level(d, crisp, scaled, AlphaLevel(0.8)) == doctest::Approx(12.0));

  Rng rng(4);
  for (int i = 0; i < 10; ++i) {
    const Matrix t = rng.matrix(3, 3, Field::complex);
    const double computed = alpha_operator_norm(t);
    const double sampled = oracle::sampled_norm(t, 10000, i);
    CHECK(sampled <= computed * (1 + 1e-12));
    CHECK(computed <= oracle::power_norm(t, i) * (1 + 1e-6));
  }
}

TEST_CASE("positive semidefinite order") {
  Rng rng(5);
  const Matrix g = rng.matrix(3, 3, Field::complex);
  const Matrix psd = g * conj_transpose(g);
  CHECK(psd_order_check(Matrix(3, 3), psd).holds);
  CHECK(psd_order_check(psd, psd).holds);
  const auto r = psd_order_check(diag({1, 2}), diag({2, 1}));
  CHECK_FALSE(r.holds);
  CHECK(r.min_eigenvalue == doctest::Approx(-1.0));
  CHECK(std::abs(r.witness[1]) == doctest::Approx(1.0));
  CHECK_THROWS_AS(psd_order_check(Matrix(2, 3), Matrix(2, 3)), InputError);
  // Antisymmetry: P <= Q and Q <= P only when they agree.
  for (int i = 0; i < 30; ++i) {
    const Matrix a = rng.matrix(3, 3, Field::complex);
    const Matrix b = rng.matrix(3, 3, Field::complex);
    const Matrix p = a * conj_transpose(a);
    const Matrix q = b * conj_transpose(b);
    if (psd_order_check(p, q).holds && psd_order_check(q, p).holds) CHECK(distance(p, q) <= 1e-8 * (1 + frobenius_norm(p)));
  }
}

TEST_CASE("pseudo-inverse") {
  const auto d = pseudo_inverse(diag({2, 0}));
  CHECK(distance(d.dagger, diag({0.5, 0})) <= 1e-15);
  CHECK(d.rank == 1);
  Rng rng(6);
  const Matrix t = rng.matrix(4, 4, Field::real);
  CHECK(distance(pseudo_inverse(t).dagger * t, Matrix::identity(4)) <= 1e-10);
  for (int i = 0; i < 50; ++i) {
    const std::size_t rows = 1 + rng.index(6);
    const std::size_t cols = 1 + rng.index(6);
    const std::size_t rank = 1 + rng.index(std::min(rows, cols));
    const Matrix m = oracle::random_rank(rng, rows, cols, rank, Field::complex);
    const auto p = pseudo_inverse(m);
    CHECK(p.rank == rank);
    CHECK(penrose_residuals(m, p.dagger).max() <= 1e-9);
    CHECK(distance(pseudo_inverse(adjoint(m)).dagger, adjoint(p.dagger)) <= 1e-10 * (1 + frobenius_norm(p.dagger)));
    // T T+ x = x on the range.
    const Vector x = m * rng.vector(cols, Field::complex);
    CHECK(norm(subtract(m * (p.dagger * x), x)) <= 1e-9 * (1 + norm(x)));
  }
}

TEST_CASE("pencil extremes") {
  const auto bounded = pencil_sup(diag({4, 1, 0}), diag({3, 2, 0}));
  CHECK(bounded.bounded());
  CHECK(bounded.value == doctest::Approx(4.0 / 3.0));
  const auto unbounded = pencil_sup(diag({0, 1}), diag({1, 0}));
  CHECK_FALSE(unbounded.bounded());
  CHECK(std::abs(unbounded.witness[1]) == doctest::Approx(1.0));
}

TEST_CASE("Douglas range inclusion, majorization and factorization") {
  const Matrix n0 = diag({1, 0});
  CHECK(douglas_range_inclusion(n0, n0));
  CHECK_FALSE(douglas_range_inclusion(diag({0, 1}), n0));
  CHECK_THROWS_AS(douglas_lambda(diag({0, 1}), n0), HypothesisError);
  CHECK_THROWS_AS(douglas_factorize(diag({0, 1}), n0), HypothesisError);

  Rng rng(7);
  const Matrix full = rng.matrix(3, 3, Field::real);
  CHECK(douglas_lambda(Scalar(2.0) * full, full) == doctest::Approx(2.0));
  CHECK(douglas_lambda(full, full) == doctest::Approx(1.0));
  CHECK(distance(douglas_factorize(full, full).w, Matrix::identity(3)) <= 1e-10);
  const auto half = douglas_factorize(diag({0.5, 0}), n0);
  CHECK(distance(half.w, diag({0.5, 0})) <= 1e-12);

  for (int i = 0; i < 50; ++i) {
    const Field field = oracle::random_field(rng);
    const Matrix n = rng.matrix(4, 4, field);
    const Matrix w0 = rng.matrix(4, 4, field);
    const Matrix m = n * w0;
    CHECK(douglas_range_inclusion(m, n));
    const double lambda = douglas_lambda(m, n);
    CHECK(lambda <= spectral_norm(w0) * (1 + 1e-9));
    Matrix majorant = n * conj_transpose(n);
    majorant *= Scalar(lambda * lambda * (1 + 1e-9));
    CHECK(psd_order_check(m * conj_transpose(m), majorant).holds);
    const auto f = douglas_factorize(m, n);
    CHECK(f.residual <= 1e-9 * (1 + spectral_norm(m)));
    CHECK(distance(f.w, w0) <= 1e-9 * (1 + frobenius_norm(w0)));
  }
}
