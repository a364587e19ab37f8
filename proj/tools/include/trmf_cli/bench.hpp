#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trmf/lag_set.hpp"
#include "trmf/metrics.hpp"
#include "trmf/model.hpp"
#include "trmf/series.hpp"

namespace trmf::cli {

enum class Method { kTrmf, kTcf, kMf, kSvdAr1, kAr1, kMean, kDlm };

std::string_view method_name(Method m);
Method parse_method(std::string_view name);
/// Comma-separated method names.
std::vector<Method> parse_methods(std::string_view list);

enum class Task { kForecast, kImpute };

struct GridPoint {
  std::size_t k;
  double lambda_f, lambda_x, lambda_w;
};

/// Product grid over k and the lambdas. Unless an untied list is given, each
/// value in `lambdas` is shared by lambda_f, lambda_x and lambda_w.
struct Grid {
  std::vector<std::size_t> ks = {2, 4, 8};
  std::vector<double> lambdas = {50, 5, 0.5, 0.05};
  std::vector<double> lambda_f, lambda_x, lambda_w;  ///< untied lists (empty = use lambdas)

  std::vector<GridPoint> points() const;
};

struct BenchConfig {
  Task task = Task::kForecast;
  LagSet lags = LagSet({1, 2, 3, 4, 5, 6, 7, 8});
  Grid grid;
  std::vector<Method> methods = {Method::kTrmf, Method::kSvdAr1, Method::kTcf, Method::kAr1,
                                 Method::kDlm, Method::kMean};
  std::size_t horizon = 1;
  std::size_t windows = 10;
  double observed_fraction = 0.5;
  std::size_t block_len = 2;
  std::uint64_t seed = 0;
  /// Solver settings other than k and the lambdas.
  Hyperparams base;
  std::size_t threads = 1;
};

struct GridResult {
  Method method;
  GridPoint point;
  bool ok = false;
  std::string error;  ///< set when !ok
  double nd = 0.0;
  double nrmse = 0.0;
  std::size_t n_test = 0;
};

struct MethodSummary {
  Method method;
  /// False for methods that cannot run on this data (e.g. AR(1) with holes).
  bool supported = true;
  bool ok = false;
  double best_nd = 0.0;
  double best_nrmse = 0.0;
  std::size_t n_test = 0;
  std::optional<GridPoint> best_nd_point;
};

struct BenchOutcome {
  std::string split_id;
  std::vector<GridResult> grid;
  std::vector<MethodSummary> summary;  ///< in config.methods order
};

/// Rolling-window forecasting: each window refits on columns [0, train_end)
/// and forecasts the next `horizon` steps; errors are pooled over windows.
BenchOutcome run_forecast_bench(const ObservedSeries& data, const BenchConfig& config);

/// Occludes blocks of `truth` and scores every method on the hidden cells.
BenchOutcome run_impute_bench(const ObservedSeries& truth, const BenchConfig& config);

/// Best-over-grid rows in EvalReport CSV layout.
std::string format_summary(const BenchOutcome& outcome);

/// Every grid point: method,k,lambda_f,lambda_x,lambda_w,nd,nrmse,n_test,status.
std::string format_grid(const BenchOutcome& outcome);

}  // namespace trmf::cli
