#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "trmf/dense.hpp"
#include "trmf/model.hpp"
#include "trmf/series.hpp"

namespace trmf {

struct SyntheticConfig {
  std::uint64_t seed = 0;
  std::size_t n = 16;
  std::size_t t_count = 128;
  std::size_t k = 4;
  std::vector<std::size_t> lags = {1, 8};
  /// Observation noise std on y = F x + noise.
  double sigma = 0.1;
  /// Innovation std of the latent AR process.
  double latent_sigma = 0.1;
};

struct SyntheticTruth {
  ObservedSeries y;  ///< fully observed
  DenseMatrix f_true;
  DenseMatrix x_true;
  ARWeights w_true;
  double sigma = 0.0;
  double latent_sigma = 0.0;
};

/// Draws stable diagonal lag weights (uniform in [-0.8, 0.8], rejected until
/// stable), F with standard normal entries, simulates the latent AR process
/// with a burn-in of 4 * l_max discarded steps, and adds observation noise.
SyntheticTruth gen_synthetic(const SyntheticConfig& config);

/// True iff every root of z^p - sum_l w_l z^{p-l} lies strictly inside the
/// unit circle (Schur-Cohn step-down test).
bool ar_is_stable(const LagSet& lags, std::span<const double> wbar);

}  // namespace trmf
