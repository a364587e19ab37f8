#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "trmf/dense.hpp"
#include "trmf/lag_set.hpp"
#include "trmf/series.hpp"
#include "trmf/temporal_graph.hpp"

namespace trmf {

struct Hyperparams {
  std::size_t k = 4;
  double lambda_f = 0.5;
  double lambda_x = 0.5;
  double lambda_w = 0.5;
  /// Strong-convexity weight inside each temporal regularizer.
  double eta = 1.0;
  std::size_t max_outer_iters = 40;
  double rel_tol = 1e-4;
  double cg_tol = 1e-6;
  std::size_t cg_max_iter = 200;
  std::uint64_t seed = 0;

  /// Throws InvalidArgument on k = 0, eta <= 0, rel_tol <= 0 or negative lambdas.
  void validate() const;

  friend bool operator==(const Hyperparams&, const Hyperparams&) = default;
};

/// Diagonal AR lag weights: row r holds the coefficients of latent row r,
/// columns follow the lag set order.
struct ARWeights {
  LagSet lags;
  DenseMatrix w;

  ARWeights(LagSet lag_set, std::size_t k);
  ARWeights(LagSet lag_set, DenseMatrix weights);

  std::size_t k() const noexcept { return w.rows(); }
  LagWeights row(std::size_t r) const;

  friend bool operator==(const ARWeights&, const ARWeights&) = default;
};

struct TraceEntry {
  std::size_t iteration;
  double objective;
  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct TrmfModel {
  DenseMatrix f_mat;  ///< n x k
  DenseMatrix x_mat;  ///< k x T
  ARWeights ar;
  Hyperparams hyper;
  /// Objective at initialization (iteration 0) and after every sweep.
  std::vector<TraceEntry> fit_trace;

  friend bool operator==(const TrmfModel&, const TrmfModel&) = default;
};

/// sum_Omega (Y - f_i^T x_t)^2 + lambda_f ||F||^2 + lambda_x sum_r TR(x_r)
/// + lambda_w ||W||^2
double objective(const ObservedSeries& data, const TrmfModel& model);

/// Data term plus lambda_x sum_r TR(x_r): the function the X update minimizes.
double x_subproblem_value(const ObservedSeries& data, const DenseMatrix& f_mat,
                          const ARWeights& ar, double lambda_x, double eta,
                          const DenseMatrix& x_mat);

/// Exact per-row ridge solution for F. Rows without observations become 0.
/// Throws DegenerateRidge when lambda_f = 0 leaves a row's system singular.
DenseMatrix update_f(const ObservedSeries& data, const DenseMatrix& x_mat, double lambda_f);

/// Joint Krylov solve of the X subproblem over all k*T unknowns, started at
/// x_init.
DenseMatrix update_x(const ObservedSeries& data, const DenseMatrix& f_mat, const ARWeights& ar,
                     double lambda_x, double eta, const DenseMatrix& x_init, double cg_tol,
                     std::size_t cg_max_iter);

/// Per-row ridge AR regression: argmin sum_{t} (x_t - sum_l w_l x_{t-l})^2
/// + (2 lambda_w / lambda_x) ||w||^2, the exact minimizer of the objective over W.
ARWeights update_w(const DenseMatrix& x_mat, const LagSet& lags, double lambda_x,
                   double lambda_w);

/// Alternating minimization over F, X, W (in that order per sweep).
TrmfModel fit(const ObservedSeries& data, const Hyperparams& hyper, const LagSet& lags);

/// Same solver with the lag weights held fixed (no W step).
TrmfModel fit_fixed_weights(const ObservedSeries& data, const Hyperparams& hyper,
                            const ARWeights& weights);

enum class WeightConstraint { kNonnegative, kSimplex };

/// Minimizer of the naive learned-graph regularizer sum_l w_l c_l with
/// c_l = sum_{t >= l} ||x_t - x_{t-l}||^2, under w >= 0 or the simplex.
/// Ties in the simplex case go to the smallest lag.
Vector naive_graph_weights(const DenseMatrix& x_mat, const LagSet& lags,
                           WeightConstraint constraint);

/// The per-lag costs c_l used by naive_graph_weights.
Vector naive_graph_costs(const DenseMatrix& x_mat, const LagSet& lags);

}  // namespace trmf
