#include <doctest.h>

#include "fixtures.hpp"
#include "fuzzyframes/errors.hpp"
#include "fuzzyframes/frame_transforms.hpp"
#include "fuzzyframes/operator_algebra.hpp"
#include "oracles.hpp"

using namespace fuzzyframes;

namespace {

const auto kAlphas = make_alphas(fixture::kDefaultAlphas);

Matrix diag(std::initializer_list<double> values) {
  const std::vector<double> v(values);
  return Matrix::diagonal(v);
}

FrameFamily random_frame(Rng& rng, std::size_t n, std::size_t m, Field field) {
  return FrameFamily(FuzzyModel(BaseSpace(n, field), Profile::scaled), oracle::random_family(rng, n, m, field));
}

}  // namespace

TEST_CASE("scalar combinations: stated and corrected lower bounds") {
  const auto f41 = fixture::family_4_1();
  const Matrix k = fixture::operator_4_1();
  const auto half = combine_scalar(f41, k, k, 0.5, 0.5, kAlphas);
  // The stated constant evaluates to 2A for a = b = 1/2 and overshoots A_opt = A.
  CHECK(half.stated.lower == doctest::Approx(2.0));
  CHECK_FALSE(half.stated.verification.passed);
  REQUIRE(half.corrected);
  CHECK(half.corrected->lower == doctest::Approx(1.0));
  CHECK(half.corrected->verification.passed);
  CHECK(half.stated.upper == doctest::Approx(6.0));

  // a = 1, b = 0 reduces to K1 and stays below the direct certificate.
  const auto single = combine_scalar(f41, k, Matrix::identity(3), 1.0, 0.0, kAlphas);
  CHECK(single.corrected->verification.passed);
  CHECK(single.corrected->lower <= optimal_kframe_bounds(f41, k).lower + 1e-9);
  const auto swapped = combine_scalar(f41, k, Matrix::identity(3), 0.0, 1.0, kAlphas);
  CHECK(swapped.corrected->verification.passed);

  const auto with_identity = combine_scalar(f41, k, Matrix::identity(3), 0.3, -0.7, kAlphas);
  CHECK(with_identity.corrected->verification.passed);
  CHECK_THROWS_AS(combine_scalar(f41, k, k, 0.0, 0.0, kAlphas), InputError);
  CHECK_THROWS_AS(combine_scalar(fixture::family_3_1(), Matrix::identity(3), Matrix::identity(3), 1.0, 1.0, kAlphas),
                  PreconditionError);

  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const Field field = oracle::random_field(rng);
    const auto family = random_frame(rng, 3, 5, field);
    const auto r = combine_scalar(family, rng.matrix(3, 3, field), rng.matrix(3, 3, field), rng.scalar(field),
                                  rng.scalar(field), kAlphas);
    CHECK(r.corrected->verification.passed);
    CHECK(r.corrected->lower <= r.optimal.lower * (1 + 1e-9));
  }
}

TEST_CASE("products of two operators") {
  const auto f41 = fixture::family_4_1();
  const Matrix k = fixture::operator_4_1();
  const double a = optimal_kframe_bounds(f41, k).lower;
  CHECK(combine_product(f41, k, Matrix::identity(3), kAlphas).stated.lower == doctest::Approx(a));
  const auto doubled = combine_product(f41, k, Scalar(2.0) * Matrix::identity(3), kAlphas);
  CHECK(doubled.stated.lower == doctest::Approx(a / 4));
  CHECK(doubled.stated.verification.passed);
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    const Field field = oracle::random_field(rng);
    const auto family = random_frame(rng, 3, 4, field);
    const auto r = combine_product(family, rng.matrix(3, 3, field), rng.matrix(3, 3, field), kAlphas);
    CHECK(r.stated.verification.passed);
  }
}

TEST_CASE("n-ary combinations") {
  const auto f41 = fixture::family_4_1();
  const Matrix k = fixture::operator_4_1();
  const double a = optimal_kframe_bounds(f41, k).lower;
  const std::vector<Matrix> one{k};
  const auto single = combine_many(f41, one, std::vector<Scalar>{2.0}, kAlphas);
  CHECK(single.stated.lower == doctest::Approx(a / 4));
  CHECK(single.stated.verification.passed);
  CHECK_FALSE(single.corrected);

  // Two equal operators with a = (1, 1): the target 2K has A_opt = A/4.
  const std::vector<Matrix> pair{k, k};
  const auto doubled = combine_many(f41, pair, std::vector<Scalar>{1.0, 1.0}, kAlphas);
  CHECK(doubled.stated.lower == doctest::Approx(a / 2));
  CHECK_FALSE(doubled.stated.verification.passed);
  REQUIRE(doubled.corrected);
  CHECK(doubled.corrected->lower == doctest::Approx(a / 4));
  CHECK(doubled.corrected->verification.passed);

  // Three commuting diagonals.
  const FrameFamily frame = fixture::family_4_1();
  const std::vector<Matrix> diagonals{diag({1, 2, 3}), diag({0.5, 1, 2}), diag({2, 1, 1})};
  const auto product = combine_many(frame, diagonals, std::nullopt, kAlphas);
  CHECK(product.reliable().verification.passed);
  CHECK_FALSE(product.notes.empty());

  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto family = random_frame(rng, 3, 5, Field::complex);
    std::vector<Matrix> ops;
    std::vector<Scalar> coefficients;
    const std::size_t n = 1 + rng.index(4);
    for (std::size_t j = 0; j < n; ++j) {
      ops.push_back(rng.matrix(3, 3, Field::complex));
      coefficients.push_back(rng.scalar(Field::complex));
    }
    CHECK(combine_many(family, ops, coefficients, kAlphas).reliable().verification.passed);
    CHECK(combine_many(family, ops, std::nullopt, kAlphas).reliable().verification.passed);
  }
}

TEST_CASE("Bessel pairs") {
  const auto basis = fixture::standard_basis(3);
  const auto trivial = bessel_pair_kframe(basis, basis, Matrix::identity(3), kAlphas);
  CHECK(trivial.certificate.lower == doctest::Approx(1.0));
  CHECK(trivial.verification.passed);

  const FuzzyModel model(BaseSpace(2, Field::real), Profile::scaled);
  const FrameFamily f(model, {Vector{2.0, 0.0}, Vector{0.0, 1.0}});
  const FrameFamily g(model, {Vector{0.5, 0.0}, Vector{0.0, 1.0}});
  const auto r = bessel_pair_kframe(f, g, Matrix::identity(2), kAlphas);
  CHECK(r.certified_first);
  CHECK(r.bessel_second == doctest::Approx(1.0));
  CHECK(r.certificate.lower == doctest::Approx(1.0));
  CHECK(r.verification.passed);
  CHECK_THROWS_AS(bessel_pair_kframe(f, f, Matrix::identity(2), kAlphas), HypothesisError);

  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    const Field field = oracle::random_field(rng);
    const auto ff = random_frame(rng, 3, 4, field);
    const auto gg = random_frame(rng, 3, 4, field);
    const Matrix k = synthesis_matrix(ff) * conj_transpose(synthesis_matrix(gg));
    CHECK(bessel_pair_kframe(ff, gg, k, kAlphas).verification.passed);
    const auto swapped = bessel_pair_kframe(gg, ff, k, kAlphas);
    CHECK_FALSE(swapped.certified_first);
    CHECK(swapped.verification.passed);
  }
}

TEST_CASE("invertible and coisometric transforms") {
  const auto f41 = fixture::family_4_1();
  const Matrix k = fixture::operator_4_1();
  const auto cert = optimal_kframe_bounds(f41, k);
  const auto doubled = transform_family(f41, Scalar(2.0) * Matrix::identity(3), k, TransformVariant::invertible, kAlphas);
  CHECK(doubled.derived.lower == doctest::Approx(4 * cert.lower));
  CHECK(doubled.derived.upper == doctest::Approx(4 * cert.upper));
  CHECK(doubled.derived.verification.passed);
  const auto same = transform_family(f41, Matrix::identity(3), k, TransformVariant::invertible, kAlphas);
  CHECK(same.derived.lower == doctest::Approx(cert.lower));

  // A diagonal unitary commutes with a diagonal K.
  const FrameFamily frame(FuzzyModel(BaseSpace(3, Field::complex), Profile::scaled), fixture::family_4_1().vectors());
  const Matrix kd = diag({1, 2, 3});
  Matrix u(3, 3);
  u(0, 0) = std::polar(1.0, 0.3);
  u(1, 1) = std::polar(1.0, -1.1);
  u(2, 2) = -1.0;
  const auto unitary = transform_family(frame, u, kd, TransformVariant::coisometry, kAlphas);
  const auto before = optimal_kframe_bounds(frame, kd);
  CHECK(std::abs(unitary.optimal.lower - before.lower) <= 1e-10 * before.lower);
  CHECK(std::abs(unitary.optimal.upper - before.upper) <= 1e-10 * before.upper);
  CHECK(unitary.derived.verification.passed);

  CHECK_THROWS_AS(transform_family(f41, diag({1, 2, 3}), k, TransformVariant::invertible, kAlphas), HypothesisError);
  CHECK_THROWS_AS(transform_family(f41, diag({1, 1, 0}), Matrix::identity(3), TransformVariant::invertible, kAlphas),
                  HypothesisError);
  CHECK_THROWS_AS(transform_family(f41, Scalar(2.0) * Matrix::identity(3), k, TransformVariant::coisometry, kAlphas),
                  HypothesisError);

  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    // Polynomials in K commute with K.
    const Matrix kk = rng.matrix(3, 3, Field::complex);
    const Matrix t = Scalar(2.0) * Matrix::identity(3) + rng.scalar(Field::complex) * kk + Scalar(0.1) * kk * kk;
    const auto family = random_frame(rng, 3, 5, Field::complex);
    const auto r = transform_family(family, t, kk, TransformVariant::invertible, kAlphas);
    CHECK(r.derived.verification.passed);
  }
}

TEST_CASE("operator transfer") {
  const auto f31 = fixture::family_3_1();
  const Matrix k = fixture::operator_3_1();
  const double a = optimal_kframe_bounds(f31, k).lower;
  const auto same = operator_transfer(f31, k, k, kAlphas);
  CHECK(same.lambda == doctest::Approx(1.0));
  CHECK(same.derived.lower == doctest::Approx(a));
  const auto half = operator_transfer(f31, k, Scalar(0.5) * k, kAlphas);
  CHECK(half.lambda == doctest::Approx(0.5));
  CHECK(half.derived.lower == doctest::Approx(4 * a));
  CHECK(half.derived.verification.passed);
  const auto projector = operator_transfer(f31, k, diag({1, 0, 0}), kAlphas);
  CHECK(projector.derived.verification.passed);
  CHECK(projector.derived.lower <= projector.optimal.lower + 1e-9);
  CHECK_THROWS_AS(operator_transfer(f31, k, diag({0, 0, 1}), kAlphas), HypothesisError);

  // The operator printed with the alpha = 0.5 example has R(T) outside R(K).
  const Matrix t{{2.0, 0.0, 0.0}, {0.0, 3.0, 0.0}, {0.0, 1.0, 6.0}};
  CHECK_THROWS_AS(operator_transfer(fixture::family_4_1(), fixture::operator_4_1(), t, kAlphas), HypothesisError);
}

TEST_CASE("synthesis characterization and construction") {
  const auto r31 = synthesis_characterization(fixture::family_3_1(), fixture::operator_3_1());
  CHECK(r31.range_included);
  CHECK(r31.kframe.lower == doctest::Approx(0.5));
  CHECK(r31.equivalence_holds);
  const auto missing = synthesis_characterization(fixture::family_3_1(), Matrix::identity(3));
  CHECK_FALSE(missing.range_included);
  CHECK_FALSE(missing.kframe.has_lower_bound());
  CHECK(missing.equivalence_holds);

  Rng rng(6);
  const FuzzyModel model(BaseSpace(4, Field::real), Profile::scaled);
  for (int i = 0; i < 50; ++i) {
    const Matrix t = oracle::random_rank(rng, 4, 5, 1 + rng.index(4), Field::real);
    const Matrix k = t * rng.matrix(5, 4, Field::real);
    const auto built = build_family(model, t, k, kAlphas);
    CHECK(built.certified);
    CHECK(built.lower > 0.0);
    CHECK(built.verification.passed);
    const auto forward = synthesis_characterization(built.family, k);
    CHECK(forward.equivalence_holds);
    const auto outside = synthesis_characterization(built.family, rng.matrix(4, 4, Field::real));
    CHECK(outside.equivalence_holds);
  }
}
