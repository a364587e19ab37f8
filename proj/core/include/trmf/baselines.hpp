#pragma once

#include <cstddef>
#include <string_view>
#include <variant>

#include "trmf/dense.hpp"
#include "trmf/model.hpp"
#include "trmf/series.hpp"

namespace trmf {

enum class BaselineKind { kMean, kAr1, kSvdAr1, kTcf };

std::string_view baseline_name(BaselineKind kind);

struct MeanModel {
  double mean = 0.0;
  std::size_t n = 0;
  std::size_t t_count = 0;
};

/// Full n-dimensional AR(1): y_{t+1} = A y_t.
struct Ar1Model {
  DenseMatrix transition;  ///< n x n
  Vector last;             ///< y_T
};

/// Rank-k SVD factors with a k-dimensional AR(1) on the latent columns.
struct SvdAr1Model {
  DenseMatrix f_mat;       ///< U_k S_k, n x k
  DenseMatrix x_mat;       ///< V_k^T, k x T
  DenseMatrix transition;  ///< k x k
};

struct BaselineModel {
  BaselineKind kind;
  std::variant<MeanModel, Ar1Model, SvdAr1Model, TrmfModel> payload;
};

/// Predicts the mean of the observed entries everywhere. Throws EmptyMask.
BaselineModel fit_mean(const ObservedSeries& data);

/// Row-wise ridge AR(1) on fully observed data. Throws
/// MissingValuesUnsupported for incomplete masks and DegenerateRidge when
/// lambda = 0 leaves the lagged Gram matrix singular.
BaselineModel fit_ar1_full(const ObservedSeries& data, double lambda);

BaselineModel fit_svd_ar1(const ObservedSeries& data, std::size_t k, double lambda);

/// The TRMF solver with L = {1} and every weight pinned to 1.
BaselineModel fit_tcf(const ObservedSeries& data, const Hyperparams& hyper);

/// Pinned weights for the chain-graph regularizer: L = {1}, w = 1.
ARWeights tcf_weights(std::size_t k);

/// Plain regularized MF: L = {1} with zero pinned weights, so each temporal
/// term reduces to (eta / 2) ||x_r||^2.
ARWeights plain_mf_weights(std::size_t k);

/// n x horizon point forecasts following the training window.
DenseMatrix forecast_baseline(const BaselineModel& model, std::size_t horizon);

/// In-sample reconstruction of every cell (n x T). Throws
/// InvalidArgument for AR(1), which has no in-sample low-rank fit.
DenseMatrix reconstruct_baseline(const BaselineModel& model);

/// Ridge least squares for a transition A minimizing
/// sum_t ||z_{t+1} - A z_t||^2 + lambda ||A||_F^2 over the columns of `z`.
DenseMatrix fit_transition(const DenseMatrix& z, double lambda);

}  // namespace trmf
