#pragma once

#include <cstddef>
#include <vector>

#include "trmf/dense.hpp"
#include "trmf/model.hpp"

namespace trmf {

struct ForecastResult {
  DenseMatrix x_new;  ///< k x horizon
  DenseMatrix y_new;  ///< n x horizon, equal to F * x_new
  std::size_t horizon = 0;
};

/// Noise-free recursion x_{T+j} = sum_l W^(l) x_{T+j-l}, feeding earlier
/// forecasts back in once T + j - l > T.
DenseMatrix forecast_latent(const DenseMatrix& x_mat, const ARWeights& ar, std::size_t horizon);

ForecastResult forecast_series(const TrmfModel& model, std::size_t horizon);

struct CellIndex {
  std::size_t series;
  std::size_t time;
  friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

struct ImputedValue {
  std::size_t series;
  std::size_t time;
  double value;
};

/// f_i^T x_t for every target; throws IndexOutOfBounds outside n x T.
std::vector<ImputedValue> impute(const TrmfModel& model, const std::vector<CellIndex>& targets);

}  // namespace trmf
