#include "trmf/metrics.hpp"

#include <cmath>
#include <cstdio>

#include "trmf/error.hpp"

namespace trmf {

namespace {

double mean_abs_truth(std::span<const double> pred, std::span<const double> truth) {
  if (pred.size() != truth.size())
    fail(ErrorCode::kDimensionMismatch, "prediction and truth lengths differ");
  if (truth.empty()) fail(ErrorCode::kZeroDenominator, "empty test set");
  double s = 0.0;
  for (double y : truth) s += std::abs(y);
  s /= static_cast<double>(truth.size());
  if (!(s > 0.0)) fail(ErrorCode::kZeroDenominator, "mean absolute truth is zero");
  return s;
}

}  // namespace

double nd(std::span<const double> pred, std::span<const double> truth) {
  const double denom = mean_abs_truth(pred, truth);
  double s = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) s += std::abs(pred[i] - truth[i]);
  return s / static_cast<double>(truth.size()) / denom;
}

double nrmse(std::span<const double> pred, std::span<const double> truth) {
  const double denom = mean_abs_truth(pred, truth);
  double s = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double d = pred[i] - truth[i];
    s += d * d;
  }
  return std::sqrt(s / static_cast<double>(truth.size())) / denom;
}

std::string format_report_row(const EvalReport& r) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), ",%.6f,%.6f,%zu", r.nd, r.nrmse, r.n_test);
  return r.method + "," + r.split_id + buf;
}

}  // namespace trmf
