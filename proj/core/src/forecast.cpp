#include "trmf/forecast.hpp"

#include <string>

#include "trmf/error.hpp"

namespace trmf {

DenseMatrix forecast_latent(const DenseMatrix& x_mat, const ARWeights& ar, std::size_t horizon) {
  const std::size_t t_count = x_mat.cols();
  const std::size_t k = x_mat.rows();
  if (ar.k() != k) fail(ErrorCode::kDimensionMismatch, "lag weights rows must equal k");
  if (t_count < ar.lags.l_max())
    fail(ErrorCode::kSeriesTooShort, "need at least l_max = " + std::to_string(ar.lags.l_max()) +
                                         " columns to forecast");
  if (horizon < 1) fail(ErrorCode::kInvalidArgument, "horizon must be >= 1");

  DenseMatrix out(k, horizon);
  for (std::size_t r = 0; r < k; ++r) {
    auto hist = x_mat.row(r);
    auto w = ar.w.row(r);
    auto fut = out.row(r);
    for (std::size_t j = 0; j < horizon; ++j) {
      // Absolute position of the forecast is t_count + j.
      double s = 0.0;
      for (std::size_t a = 0; a < ar.lags.size(); ++a) {
        const std::size_t lag = ar.lags[a];
        s += w[a] * (lag > j ? hist[t_count + j - lag] : fut[j - lag]);
      }
      fut[j] = s;
    }
  }
  return out;
}

ForecastResult forecast_series(const TrmfModel& model, std::size_t horizon) {
  ForecastResult res;
  res.x_new = forecast_latent(model.x_mat, model.ar, horizon);
  res.y_new = matmul(model.f_mat, res.x_new);
  res.horizon = horizon;
  return res;
}

std::vector<ImputedValue> impute(const TrmfModel& model, const std::vector<CellIndex>& targets) {
  const std::size_t n = model.f_mat.rows();
  const std::size_t t_count = model.x_mat.cols();
  const std::size_t k = model.x_mat.rows();
  std::vector<ImputedValue> out;
  out.reserve(targets.size());
  for (const auto& c : targets) {
    if (c.series >= n || c.time >= t_count)
      fail(ErrorCode::kIndexOutOfBounds, "target (" + std::to_string(c.series) + ", " +
                                             std::to_string(c.time) + ") outside " +
                                             std::to_string(n) + "x" + std::to_string(t_count));
    double v = 0.0;
    for (std::size_t r = 0; r < k; ++r) v += model.f_mat(c.series, r) * model.x_mat(r, c.time);
    out.push_back({c.series, c.time, v});
  }
  return out;
}

}  // namespace trmf
