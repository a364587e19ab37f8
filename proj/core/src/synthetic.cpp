#include "trmf/synthetic.hpp"

#include <cmath>
#include <random>

#include "trmf/error.hpp"

namespace trmf {

bool ar_is_stable(const LagSet& lags, std::span<const double> wbar) {
  const std::size_t p = lags.l_max();
  // a(z) = 1 - sum_l w_l z^{-l}; reflection coefficients via step-down.
  std::vector<double> a(p + 1, 0.0);
  a[0] = 1.0;
  for (std::size_t j = 0; j < lags.size(); ++j) a[lags[j]] = -wbar[j];
  std::vector<double> next(p + 1);
  for (std::size_t order = p; order >= 1; --order) {
    const double kappa = a[order];
    if (!(std::abs(kappa) < 1.0)) return false;
    const double denom = 1.0 - kappa * kappa;
    for (std::size_t i = 0; i < order; ++i) next[i] = (a[i] - kappa * a[order - i]) / denom;
    for (std::size_t i = 0; i < order; ++i) a[i] = next[i];
    a[order] = 0.0;
  }
  return true;
}

SyntheticTruth gen_synthetic(const SyntheticConfig& config) {
  const LagSet lags(config.lags);
  if (config.t_count <= lags.l_max())
    fail(ErrorCode::kSeriesTooShort, "synthetic series must be longer than the largest lag");
  if (config.n < 1 || config.k < 1) fail(ErrorCode::kInvalidArgument, "n and k must be >= 1");
  if (config.sigma < 0.0 || config.latent_sigma < 0.0)
    fail(ErrorCode::kInvalidArgument, "noise levels must be nonnegative");

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> weight_dist(-0.8, 0.8);
  std::normal_distribution<double> normal(0.0, 1.0);

  ARWeights w(lags, config.k);
  constexpr int kMaxDraws = 1000000;
  for (std::size_t r = 0; r < config.k; ++r) {
    auto row = w.w.row(r);
    int draws = 0;
    do {
      if (++draws > kMaxDraws)
        fail(ErrorCode::kInvalidArgument, "no stable lag weights found for this lag set");
      for (double& v : row) v = weight_dist(rng);
    } while (!ar_is_stable(lags, row));
  }

  DenseMatrix f(config.n, config.k);
  for (double& v : f.data()) v = normal(rng);

  const std::size_t burn = 4 * lags.l_max();
  const std::size_t total = burn + config.t_count;
  DenseMatrix x(config.k, config.t_count);
  std::vector<double> path(total);
  for (std::size_t r = 0; r < config.k; ++r) {
    auto wr = w.w.row(r);
    for (std::size_t t = 0; t < total; ++t) {
      double s = config.latent_sigma * normal(rng);
      for (std::size_t j = 0; j < lags.size(); ++j)
        if (t >= lags[j]) s += wr[j] * path[t - lags[j]];
      path[t] = s;
    }
    for (std::size_t t = 0; t < config.t_count; ++t) x(r, t) = path[burn + t];
  }

  DenseMatrix y = matmul(f, x);
  for (double& v : y.data()) v += config.sigma * normal(rng);

  return SyntheticTruth{ObservedSeries::full(std::move(y)), std::move(f), std::move(x),
                        std::move(w), config.sigma, config.latent_sigma};
}

}  // namespace trmf
