#include "trmf/baselines.hpp"

#include <string>

#include "trmf/error.hpp"
#include "trmf/forecast.hpp"
#include "trmf/linalg.hpp"
#include "trmf/svd.hpp"

namespace trmf {

std::string_view baseline_name(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::kMean: return "mean";
    case BaselineKind::kAr1: return "ar1";
    case BaselineKind::kSvdAr1: return "svd_ar1";
    case BaselineKind::kTcf: return "tcf";
  }
  return "unknown";
}

namespace {

void require_full(const ObservedSeries& data, std::string_view method) {
  if (!data.fully_observed())
    fail(ErrorCode::kMissingValuesUnsupported,
         std::string(method) + ": missing values unsupported");
}

}  // namespace

BaselineModel fit_mean(const ObservedSeries& data) {
  const std::size_t count = data.observed_count();
  if (count == 0) fail(ErrorCode::kEmptyMask, "mean of an empty observation set");
  double s = 0.0;
  for (std::size_t i = 0; i < data.n(); ++i)
    for (std::size_t t = 0; t < data.t_count(); ++t)
      if (data.observed(i, t)) s += data.value(i, t);
  return {BaselineKind::kMean, MeanModel{s / static_cast<double>(count), data.n(), data.t_count()}};
}

DenseMatrix fit_transition(const DenseMatrix& z, double lambda) {
  const std::size_t dim = z.rows();
  const std::size_t t_count = z.cols();
  if (t_count < 2) fail(ErrorCode::kSeriesTooShort, "AR(1) needs at least 2 time points");
  if (lambda < 0.0) fail(ErrorCode::kInvalidArgument, "lambda must be nonnegative");
  const DenseMatrix cols = z.transpose();  // row t is z_t

  DenseMatrix gram(dim, dim);
  DenseMatrix cross(dim, dim);  // cross(j, :) = sum_t z_{j,t+1} z_t^T
  for (std::size_t t = 0; t + 1 < t_count; ++t) {
    auto prev = cols.row(t);
    auto next = cols.row(t + 1);
    for (std::size_t a = 0; a < dim; ++a) {
      axpy(prev[a], prev, gram.row(a));
      axpy(next[a], prev, cross.row(a));
    }
  }
  for (std::size_t a = 0; a < dim; ++a) gram(a, a) += lambda;

  DenseMatrix lower;
  try {
    lower = cholesky_factor(gram);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNotSPD) throw;
    fail(ErrorCode::kDegenerateRidge, "lagged Gram matrix is singular; use lambda > 0");
  }
  DenseMatrix transition(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    const Vector row = cholesky_substitute(lower, cross.row(j));
    std::copy(row.begin(), row.end(), transition.row(j).begin());
  }
  return transition;
}

BaselineModel fit_ar1_full(const ObservedSeries& data, double lambda) {
  require_full(data, "ar1");
  Ar1Model m;
  m.transition = fit_transition(data.values(), lambda);
  m.last = data.values().column(data.t_count() - 1);
  return {BaselineKind::kAr1, std::move(m)};
}

BaselineModel fit_svd_ar1(const ObservedSeries& data, std::size_t k, double lambda) {
  require_full(data, "svd_ar1");
  const std::size_t r_max = std::min(data.n(), data.t_count());
  if (k < 1 || k > r_max)
    fail(ErrorCode::kInvalidArgument, "svd_ar1 rank must lie in [1, " + std::to_string(r_max) + "]");
  const ThinSvd svd = thin_svd(data.values());
  SvdAr1Model m;
  m.f_mat = DenseMatrix(data.n(), k);
  m.x_mat = DenseMatrix(k, data.t_count());
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t i = 0; i < data.n(); ++i) m.f_mat(i, c) = svd.u(i, c) * svd.s[c];
    for (std::size_t t = 0; t < data.t_count(); ++t) m.x_mat(c, t) = svd.v(t, c);
  }
  m.transition = fit_transition(m.x_mat, lambda);
  return {BaselineKind::kSvdAr1, std::move(m)};
}

ARWeights tcf_weights(std::size_t k) { return ARWeights(LagSet({1}), DenseMatrix(k, 1, 1.0)); }

ARWeights plain_mf_weights(std::size_t k) { return ARWeights(LagSet({1}), DenseMatrix(k, 1, 0.0)); }

BaselineModel fit_tcf(const ObservedSeries& data, const Hyperparams& hyper) {
  return {BaselineKind::kTcf, fit_fixed_weights(data, hyper, tcf_weights(hyper.k))};
}

namespace {

DenseMatrix roll_transition(const DenseMatrix& transition, Vector state, std::size_t horizon) {
  DenseMatrix out(state.size(), horizon);
  for (std::size_t j = 0; j < horizon; ++j) {
    state = matvec(transition, state);
    for (std::size_t a = 0; a < state.size(); ++a) out(a, j) = state[a];
  }
  return out;
}

}  // namespace

DenseMatrix forecast_baseline(const BaselineModel& model, std::size_t horizon) {
  if (horizon < 1) fail(ErrorCode::kInvalidArgument, "horizon must be >= 1");
  switch (model.kind) {
    case BaselineKind::kMean: {
      const auto& m = std::get<MeanModel>(model.payload);
      return DenseMatrix(m.n, horizon, m.mean);
    }
    case BaselineKind::kAr1: {
      const auto& m = std::get<Ar1Model>(model.payload);
      return roll_transition(m.transition, m.last, horizon);
    }
    case BaselineKind::kSvdAr1: {
      const auto& m = std::get<SvdAr1Model>(model.payload);
      const DenseMatrix latent =
          roll_transition(m.transition, m.x_mat.column(m.x_mat.cols() - 1), horizon);
      return matmul(m.f_mat, latent);
    }
    case BaselineKind::kTcf:
      return forecast_series(std::get<TrmfModel>(model.payload), horizon).y_new;
  }
  fail(ErrorCode::kInvalidArgument, "unknown baseline kind");
}

DenseMatrix reconstruct_baseline(const BaselineModel& model) {
  switch (model.kind) {
    case BaselineKind::kMean: {
      const auto& m = std::get<MeanModel>(model.payload);
      return DenseMatrix(m.n, m.t_count, m.mean);
    }
    case BaselineKind::kAr1:
      fail(ErrorCode::kInvalidArgument, "ar1 has no in-sample reconstruction");
    case BaselineKind::kSvdAr1: {
      const auto& m = std::get<SvdAr1Model>(model.payload);
      return matmul(m.f_mat, m.x_mat);
    }
    case BaselineKind::kTcf: {
      const auto& m = std::get<TrmfModel>(model.payload);
      return matmul(m.f_mat, m.x_mat);
    }
  }
  fail(ErrorCode::kInvalidArgument, "unknown baseline kind");
}

}  // namespace trmf
