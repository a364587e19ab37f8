#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "trmf/error.hpp"
#include "trmf/forecast.hpp"
#include "trmf/synthetic.hpp"

namespace trmf {
namespace {

TrmfModel model_with(DenseMatrix f, DenseMatrix x, ARWeights ar) {
  Hyperparams h;
  h.k = x.rows();
  return TrmfModel{std::move(f), std::move(x), std::move(ar), h, {}};
}

TEST(ForecastLatent, GeometricRecursion) {
  const ARWeights ar(LagSet({1}), DenseMatrix{{0.5}});
  const DenseMatrix out = forecast_latent(DenseMatrix{{7, 2}}, ar, 3);
  EXPECT_EQ(out, (DenseMatrix{{1, 0.5, 0.25}}));
}

TEST(ForecastLatent, ZeroWeights) {
  oracle::Rng rng(1);
  const DenseMatrix out = forecast_latent(oracle::random_matrix(2, 10, rng), ARWeights(LagSet({1, 3}), 2), 4);
  for (double v : out.data()) EXPECT_EQ(v, 0.0);
}

TEST(ForecastLatent, UsesForecastColumnsBeyondT) {
  const ARWeights ar(LagSet({1, 2}), DenseMatrix{{0.5, 0.25}});
  const DenseMatrix out = forecast_latent(DenseMatrix{{4, 8}}, ar, 3);
  const double a = 0.5 * 8 + 0.25 * 4;
  const double b = 0.5 * a + 0.25 * 8;
  const double c = 0.5 * b + 0.25 * a;
  EXPECT_DOUBLE_EQ(out(0, 0), a);
  EXPECT_DOUBLE_EQ(out(0, 1), b);
  EXPECT_DOUBLE_EQ(out(0, 2), c);
}

TEST(ForecastLatent, Errors) {
  const ARWeights ar(LagSet({1, 5}), 1);
  EXPECT_THROW(forecast_latent(DenseMatrix(1, 4), ar, 1), Error);
  EXPECT_THROW(forecast_latent(DenseMatrix(1, 8), ar, 0), Error);
  EXPECT_NO_THROW(forecast_latent(DenseMatrix(1, 5), ar, 1));
}

TEST(ForecastLatent, Linearity) {
  oracle::Rng rng(2);
  const ARWeights ar(LagSet({1, 2, 6}), oracle::random_matrix(3, 3, rng, 0.4));
  for (int rep = 0; rep < 10; ++rep) {
    const DenseMatrix u = oracle::random_matrix(3, 12, rng);
    const DenseMatrix v = oracle::random_matrix(3, 12, rng);
    DenseMatrix mix = u;
    for (std::size_t i = 0; i < mix.size(); ++i) mix.data()[i] = 2.0 * u.data()[i] - 0.5 * v.data()[i];
    const DenseMatrix fu = forecast_latent(u, ar, 5), fv = forecast_latent(v, ar, 5);
    const DenseMatrix fm = forecast_latent(mix, ar, 5);
    for (std::size_t i = 0; i < fm.size(); ++i)
      EXPECT_NEAR(fm.data()[i], 2.0 * fu.data()[i] - 0.5 * fv.data()[i], 1e-10);
  }
}

TEST(ForecastLatent, ShiftConsistency) {
  oracle::Rng rng(3);
  const ARWeights ar(LagSet({1, 3}), oracle::random_matrix(2, 2, rng, 0.5));
  const DenseMatrix x = oracle::random_matrix(2, 10, rng);
  const DenseMatrix two = forecast_latent(x, ar, 2);
  const DenseMatrix one = forecast_latent(x, ar, 1);
  DenseMatrix extended(2, 11);
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t t = 0; t < 10; ++t) extended(r, t) = x(r, t);
    extended(r, 10) = one(r, 0);
  }
  const DenseMatrix next = forecast_latent(extended, ar, 1);
  for (std::size_t r = 0; r < 2; ++r) {
    EXPECT_NEAR(two(r, 0), one(r, 0), 1e-12);
    EXPECT_NEAR(two(r, 1), next(r, 0), 1e-12);
  }
}

TEST(ForecastLatent, TrueModelNearNoiseFloor) {
  double total = 0.0;
  std::size_t count = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SyntheticConfig c;
    c.seed = seed;
    const SyntheticTruth truth = gen_synthetic(c);
    const std::size_t t_count = truth.x_true.cols();
    for (std::size_t t = 100; t < t_count; ++t) {
      const DenseMatrix next = forecast_latent(truth.x_true.col_range(0, t), truth.w_true, 1);
      for (std::size_t r = 0; r < next.rows(); ++r) {
        total += std::abs(next(r, 0) - truth.x_true(r, t));
        ++count;
      }
    }
  }
  EXPECT_LE(total / static_cast<double>(count), 3.0 * 0.1);
}

TEST(ForecastSeries, IdentityLoadings) {
  const TrmfModel m = model_with(DenseMatrix::identity(2), DenseMatrix{{1, 2}, {3, 4}},
                                 ARWeights(LagSet({1}), DenseMatrix{{0.5}, {-1.0}}));
  const ForecastResult r = forecast_series(m, 2);
  EXPECT_EQ(r.horizon, 2u);
  EXPECT_EQ(r.y_new, r.x_new);
  EXPECT_EQ(r.y_new, (DenseMatrix{{1, 0.5}, {-4, 4}}));
}

TEST(ForecastSeries, RankOneDecay) {
  const TrmfModel m = model_with(DenseMatrix{{1}, {3}}, DenseMatrix{{1, 1, 1, 8}},
                                 ARWeights(LagSet({1}), DenseMatrix{{0.5}}));
  const ForecastResult r = forecast_series(m, 3);
  EXPECT_EQ(r.y_new, (DenseMatrix{{4, 2, 1}, {12, 6, 3}}));
}

TEST(Impute, ValuesAndBounds) {
  const TrmfModel m = model_with(DenseMatrix{{1, 0}, {2, 1}}, DenseMatrix{{1, 2, 3}, {0, 1, -1}},
                                 ARWeights(LagSet({1}), 2));
  const auto out = impute(m, {{1, 2}, {0, 0}});
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].series, 1u);
  EXPECT_EQ(out[0].time, 2u);
  EXPECT_DOUBLE_EQ(out[0].value, 5.0);
  EXPECT_DOUBLE_EQ(out[1].value, 1.0);
  try {
    impute(m, {{2, 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIndexOutOfBounds);
  }
}

TEST(Impute, ZeroLoadings) {
  const TrmfModel m = model_with(DenseMatrix(3, 2), DenseMatrix(2, 5, 4.0), ARWeights(LagSet({1}), 2));
  for (const auto& v : impute(m, {{0, 0}, {2, 4}})) EXPECT_EQ(v.value, 0.0);
}

TEST(Impute, ObservedEntryOfGoodFit) {
  SyntheticConfig c;
  c.sigma = 0.0;
  const SyntheticTruth truth = gen_synthetic(c);
  const TrmfModel m = model_with(truth.f_true, truth.x_true, truth.w_true);
  const auto out = impute(m, {{3, 40}});
  EXPECT_NEAR(out[0].value, truth.y.value(3, 40), 1e-12);
}

}  // namespace
}  // namespace trmf
