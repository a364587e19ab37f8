#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "trmf/dense.hpp"
#include "trmf/error.hpp"
#include "trmf/linalg.hpp"
#include "trmf/svd.hpp"

namespace trmf {
namespace {

LinearOperator dense_op(const DenseMatrix& a) {
  return {a.rows(), [&a](std::span<const double> in, std::span<double> out) {
            const Vector y = matvec(a, in);
            std::copy(y.begin(), y.end(), out.begin());
          }};
}

void expect_error(ErrorCode code, const std::function<void()>& fn) {
  try {
    fn();
    FAIL() << "expected " << error_name(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

TEST(DenseMatrix, ShapeAndAccess) {
  DenseMatrix m{{1, 2, 3}, {4, 5, 6}};
  EXPECT_EQ(m.rows(), 2u);
  EXPECT_EQ(m.cols(), 3u);
  EXPECT_EQ(m(1, 2), 6.0);
  EXPECT_EQ(m.transpose()(2, 1), 6.0);
  EXPECT_EQ(m.column(1), (Vector{2, 5}));
  EXPECT_EQ(m.col_range(1, 2), (DenseMatrix{{2, 3}, {5, 6}}));
  EXPECT_DOUBLE_EQ(m.frobenius_sq(), 91.0);
  expect_error(ErrorCode::kDimensionMismatch, [] { DenseMatrix(2, 2, Vector{1, 2, 3}); });
}

TEST(DenseMatrix, Products) {
  const DenseMatrix a{{1, 2}, {3, 4}};
  const DenseMatrix b{{0, 1}, {1, 0}};
  EXPECT_EQ(matmul(a, b), (DenseMatrix{{2, 1}, {4, 3}}));
  EXPECT_EQ(matvec(a, Vector{1, 1}), (Vector{3, 7}));
  expect_error(ErrorCode::kDimensionMismatch, [&] { matmul(a, DenseMatrix(3, 1)); });
}

TEST(Cholesky, IdentityAndDiagonal) {
  EXPECT_EQ(cholesky_solve(DenseMatrix::identity(3), Vector{1, 2, 3}), (Vector{1, 2, 3}));
  const Vector x = cholesky_solve(DenseMatrix{{2, 0}, {0, 4}}, Vector{2, 8});
  EXPECT_DOUBLE_EQ(x[0], 1.0);
  EXPECT_DOUBLE_EQ(x[1], 2.0);
}

TEST(Cholesky, MatchesGaussianElimination) {
  oracle::Rng rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const DenseMatrix a = oracle::random_spd(10, rng);
    const Vector b = oracle::random_vector(10, rng);
    const Vector x = cholesky_solve(a, b);
    EXPECT_LT(oracle::max_abs_diff(x, oracle::gauss_solve(a, b)), 1e-8);
    Vector r = matvec(a, x);
    axpy(-1.0, b, r);
    EXPECT_LE(norm2(r), 1e-8 * norm2(b));
  }
}

TEST(Cholesky, Errors) {
  expect_error(ErrorCode::kNotSPD, [] { cholesky_solve(DenseMatrix{{1, 2}, {2, 1}}, Vector{1, 1}); });
  expect_error(ErrorCode::kNotSPD, [] { cholesky_solve(DenseMatrix{{1, 0.5}, {0.4, 1}}, Vector{1, 1}); });
  expect_error(ErrorCode::kDimensionMismatch, [] { cholesky_solve(DenseMatrix::identity(2), Vector{1}); });
  expect_error(ErrorCode::kDimensionMismatch, [] { cholesky_solve(DenseMatrix(2, 3), Vector{1, 1}); });
}

TEST(ConjugateGradient, IdentityOneIteration) {
  const DenseMatrix id = DenseMatrix::identity(4);
  const Vector b{1, -2, 3, 0.5};
  const CgResult r = conjugate_gradient(dense_op(id), b, Vector(4, 0.0), 1e-12, 50);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iterations, 1u);
  EXPECT_LT(oracle::max_abs_diff(r.x, b), 1e-14);
}

TEST(ConjugateGradient, DiagonalInverse) {
  DenseMatrix d(5, 5);
  for (std::size_t i = 0; i < 5; ++i) d(i, i) = static_cast<double>(i + 1);
  const CgResult r = conjugate_gradient(dense_op(d), Vector(5, 1.0), Vector(5, 0.0), 1e-10, 50);
  ASSERT_TRUE(r.converged);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(r.x[i], 1.0 / static_cast<double>(i + 1), 1e-10);
}

TEST(ConjugateGradient, AgreesWithCholeskyAndResidualMonotone) {
  oracle::Rng rng(5);
  for (std::size_t n : {2u, 7u, 20u, 35u, 50u}) {
    const DenseMatrix a = oracle::random_spd(n, rng);
    const Vector b = oracle::random_vector(n, rng);
    const CgResult r = conjugate_gradient(dense_op(a), b, Vector(n, 0.0), 1e-12, 10 * n);
    ASSERT_TRUE(r.converged) << n;
    const Vector direct = cholesky_solve(a, b);
    EXPECT_LE(oracle::max_abs_diff(r.x, direct), 1e-6 * (1.0 + norm2(direct))) << n;
    for (std::size_t i = 1; i < r.residual_history.size(); ++i)
      EXPECT_LE(r.residual_history[i], r.residual_history[i - 1] + 1e-12) << n << " step " << i;
  }
}

TEST(ConjugateGradient, ZeroRightHandSide) {
  const DenseMatrix a = DenseMatrix::identity(3);
  const CgResult r = conjugate_gradient(dense_op(a), Vector(3, 0.0), Vector{1, 2, 3}, 1e-8, 10);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.x, Vector(3, 0.0));
}

TEST(ConjugateGradient, WarmStartAndIterationCap) {
  oracle::Rng rng(9);
  const DenseMatrix a = oracle::random_spd(30, rng);
  const Vector b = oracle::random_vector(30, rng);
  const Vector exact = cholesky_solve(a, b);
  const CgResult warm = conjugate_gradient(dense_op(a), b, exact, 1e-8, 5);
  EXPECT_TRUE(warm.converged);
  EXPECT_LE(warm.iterations, 1u);
  const CgResult capped = conjugate_gradient(dense_op(a), b, Vector(30, 0.0), 1e-14, 2);
  EXPECT_FALSE(capped.converged);
  EXPECT_EQ(capped.iterations, 2u);
}

TEST(ConjugateGradient, NonFinite) {
  LinearOperator bad{2, [](std::span<const double>, std::span<double> out) {
                       out[0] = std::numeric_limits<double>::quiet_NaN();
                       out[1] = 1.0;
                     }};
  expect_error(ErrorCode::kNonFiniteEncountered,
               [&] { conjugate_gradient(bad, Vector{1, 1}, Vector{0, 0}, 1e-8, 10); });
}

TEST(ThinSvd, ReconstructsTallAndWide) {
  oracle::Rng rng(3);
  for (auto [rows, cols] : {std::pair<std::size_t, std::size_t>{8, 5}, {5, 8}, {6, 6}, {1, 4}}) {
    const DenseMatrix a = oracle::random_matrix(rows, cols, rng);
    const ThinSvd s = thin_svd(a);
    const std::size_t r = std::min(rows, cols);
    ASSERT_EQ(s.s.size(), r);
    for (std::size_t i = 1; i < r; ++i) EXPECT_GE(s.s[i - 1], s.s[i]);
    DenseMatrix us = s.u;
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < r; ++j) us(i, j) *= s.s[j];
    const DenseMatrix back = matmul(us, s.v.transpose());
    EXPECT_LT(oracle::max_abs_diff(back.data(), a.data()), 1e-10);
    const DenseMatrix vtv = matmul(s.v.transpose(), s.v);
    EXPECT_LT(oracle::max_abs_diff(vtv.data(), DenseMatrix::identity(r).data()), 1e-10);
  }
}

TEST(ThinSvd, RankDeficient) {
  const DenseMatrix a{{1, 2, 3}, {2, 4, 6}, {3, 6, 9}};
  const ThinSvd s = thin_svd(a);
  EXPECT_NEAR(s.s[0], 14.0, 1e-10);
  EXPECT_NEAR(s.s[1], 0.0, 1e-10);
  EXPECT_NEAR(s.s[2], 0.0, 1e-10);
}

}  // namespace
}  // namespace trmf
