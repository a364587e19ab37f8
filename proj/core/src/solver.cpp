#include "trmf/model.hpp"

#include <cmath>
#include <random>
#include <string>

#include "trmf/error.hpp"
#include "trmf/linalg.hpp"

namespace trmf {

void Hyperparams::validate() const {
  if (k < 1) fail(ErrorCode::kInvalidArgument, "rank k must be >= 1");
  if (!(eta > 0.0)) fail(ErrorCode::kInvalidArgument, "eta must be positive");
  if (!(rel_tol > 0.0)) fail(ErrorCode::kInvalidArgument, "rel_tol must be positive");
  if (!(cg_tol > 0.0)) fail(ErrorCode::kInvalidArgument, "cg_tol must be positive");
  if (lambda_f < 0.0 || lambda_x < 0.0 || lambda_w < 0.0)
    fail(ErrorCode::kInvalidArgument, "regularization weights must be nonnegative");
}

ARWeights::ARWeights(LagSet lag_set, std::size_t k) : lags(std::move(lag_set)), w(k, lags.size()) {}

ARWeights::ARWeights(LagSet lag_set, DenseMatrix weights)
    : lags(std::move(lag_set)), w(std::move(weights)) {
  if (w.cols() != lags.size())
    fail(ErrorCode::kDimensionMismatch, "weight matrix columns must match the lag set");
}

LagWeights ARWeights::row(std::size_t r) const {
  auto span = w.row(r);
  return LagWeights{Vector(span.begin(), span.end())};
}

namespace {

void check_dims(const ObservedSeries& data, const DenseMatrix& f_mat, const DenseMatrix& x_mat) {
  if (f_mat.rows() != data.n() || x_mat.cols() != data.t_count() || f_mat.cols() != x_mat.rows())
    fail(ErrorCode::kDimensionMismatch,
         "factors " + std::to_string(f_mat.rows()) + "x" + std::to_string(f_mat.cols()) + " and " +
             std::to_string(x_mat.rows()) + "x" + std::to_string(x_mat.cols()) +
             " do not fit data " + std::to_string(data.n()) + "x" +
             std::to_string(data.t_count()));
}

double data_term(const ObservedSeries& data, const DenseMatrix& f_mat, const DenseMatrix& x_mat) {
  const DenseMatrix xt = x_mat.transpose();
  double s = 0.0;
  for (std::size_t i = 0; i < data.n(); ++i) {
    for (std::size_t t = 0; t < data.t_count(); ++t) {
      if (!data.observed(i, t)) continue;
      const double r = data.value(i, t) - dot(f_mat.row(i), xt.row(t));
      s += r * r;
    }
  }
  return s;
}

double temporal_term(const ARWeights& ar, double eta, const DenseMatrix& x_mat) {
  double s = 0.0;
  for (std::size_t r = 0; r < x_mat.rows(); ++r)
    s += ar_reg_value(x_mat.row(r), ar.lags, ar.row(r), eta);
  return s;
}

}  // namespace

double x_subproblem_value(const ObservedSeries& data, const DenseMatrix& f_mat,
                          const ARWeights& ar, double lambda_x, double eta,
                          const DenseMatrix& x_mat) {
  check_dims(data, f_mat, x_mat);
  return data_term(data, f_mat, x_mat) + lambda_x * temporal_term(ar, eta, x_mat);
}

double objective(const ObservedSeries& data, const TrmfModel& model) {
  check_dims(data, model.f_mat, model.x_mat);
  if (model.ar.k() != model.x_mat.rows())
    fail(ErrorCode::kDimensionMismatch, "lag weights rows must equal k");
  const Hyperparams& h = model.hyper;
  return data_term(data, model.f_mat, model.x_mat) + h.lambda_f * model.f_mat.frobenius_sq() +
         h.lambda_x * temporal_term(model.ar, h.eta, model.x_mat) +
         h.lambda_w * model.ar.w.frobenius_sq();
}

DenseMatrix update_f(const ObservedSeries& data, const DenseMatrix& x_mat, double lambda_f) {
  if (x_mat.cols() != data.t_count())
    fail(ErrorCode::kDimensionMismatch, "X must have T columns");
  const std::size_t k = x_mat.rows();
  const DenseMatrix xt = x_mat.transpose();
  DenseMatrix f(data.n(), k);
  DenseMatrix gram(k, k);
  Vector rhs(k);
  for (std::size_t i = 0; i < data.n(); ++i) {
    std::fill(gram.data().begin(), gram.data().end(), 0.0);
    std::fill(rhs.begin(), rhs.end(), 0.0);
    bool any = false;
    for (std::size_t t = 0; t < data.t_count(); ++t) {
      if (!data.observed(i, t)) continue;
      any = true;
      auto xcol = xt.row(t);
      axpy(data.value(i, t), xcol, rhs);
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b <= a; ++b) gram(a, b) += xcol[a] * xcol[b];
    }
    if (!any) continue;
    for (std::size_t a = 0; a < k; ++a) {
      gram(a, a) += lambda_f;
      for (std::size_t b = 0; b < a; ++b) gram(b, a) = gram(a, b);
    }
    Vector sol;
    try {
      sol = cholesky_solve(gram, rhs);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNotSPD) throw;
      fail(ErrorCode::kDegenerateRidge, "F row " + std::to_string(i) + " system is singular");
    }
    std::copy(sol.begin(), sol.end(), f.row(i).begin());
  }
  return f;
}

DenseMatrix update_x(const ObservedSeries& data, const DenseMatrix& f_mat, const ARWeights& ar,
                     double lambda_x, double eta, const DenseMatrix& x_init, double cg_tol,
                     std::size_t cg_max_iter) {
  check_dims(data, f_mat, x_init);
  if (ar.k() != f_mat.cols()) fail(ErrorCode::kDimensionMismatch, "lag weights rows must equal k");
  if (!(eta > 0.0)) fail(ErrorCode::kInvalidArgument, "eta must be positive");
  const std::size_t k = f_mat.cols();
  const std::size_t t_count = data.t_count();

  // Per-time Gram blocks sum_{i in Omega_t} f_i f_i^T and rhs sum Y_it f_i.
  std::vector<double> grams(t_count * k * k, 0.0);
  Vector rhs(k * t_count, 0.0);
  for (std::size_t i = 0; i < data.n(); ++i) {
    auto fi = f_mat.row(i);
    for (std::size_t t = 0; t < t_count; ++t) {
      if (!data.observed(i, t)) continue;
      double* g = grams.data() + t * k * k;
      const double y = data.value(i, t);
      for (std::size_t a = 0; a < k; ++a) {
        rhs[a * t_count + t] += 2.0 * y * fi[a];
        for (std::size_t b = 0; b < k; ++b) g[a * k + b] += fi[a] * fi[b];
      }
    }
  }

  // Hessian of the X subproblem: 2 blockdiag_t(G_t) + lambda_x blockdiag_r(H_r).
  LinearOperator op;
  op.dim = k * t_count;
  op.apply = [&, k, t_count](std::span<const double> v, std::span<double> out) {
    for (std::size_t t = 0; t < t_count; ++t) {
      const double* g = grams.data() + t * k * k;
      for (std::size_t a = 0; a < k; ++a) {
        double s = 0.0;
        for (std::size_t b = 0; b < k; ++b) s += g[a * k + b] * v[b * t_count + t];
        out[a * t_count + t] = 2.0 * s;
      }
    }
    if (lambda_x == 0.0) return;
    for (std::size_t r = 0; r < k; ++r)
      accumulate_ar_hessian(ar.lags, ar.w.row(r), eta, lambda_x, v.subspan(r * t_count, t_count),
                            out.subspan(r * t_count, t_count));
  };

  CgResult cg = conjugate_gradient(op, rhs, x_init.data(), cg_tol, cg_max_iter);
  return DenseMatrix(k, t_count, std::move(cg.x));
}

ARWeights update_w(const DenseMatrix& x_mat, const LagSet& lags, double lambda_x,
                   double lambda_w) {
  const std::size_t t_count = x_mat.cols();
  if (t_count < lags.m())
    fail(ErrorCode::kSeriesTooShort, "need at least " + std::to_string(lags.m()) + " time points");
  if (lambda_x < 0.0 || lambda_w < 0.0 || !(lambda_x + lambda_w > 0.0))
    fail(ErrorCode::kInvalidArgument, "lambda_x + lambda_w must be positive");
  const std::size_t k = x_mat.rows();
  const std::size_t p = lags.size();
  ARWeights out(lags, k);
  // With lambda_x = 0 the temporal term vanishes and pure ridge pulls W to 0.
  if (lambda_x == 0.0) return out;
  // TR carries a factor 1/2, so the exact row minimizer has ridge 2 lambda_w / lambda_x.
  const double ridge = 2.0 * lambda_w / lambda_x;

  DenseMatrix normal(p, p);
  Vector rhs(p);
  for (std::size_t r = 0; r < k; ++r) {
    auto x = x_mat.row(r);
    std::fill(normal.data().begin(), normal.data().end(), 0.0);
    std::fill(rhs.begin(), rhs.end(), 0.0);
    for (std::size_t t = lags.l_max(); t < t_count; ++t) {
      for (std::size_t a = 0; a < p; ++a) {
        const double za = x[t - lags[a]];
        rhs[a] += za * x[t];
        for (std::size_t b = 0; b <= a; ++b) normal(a, b) += za * x[t - lags[b]];
      }
    }
    for (std::size_t a = 0; a < p; ++a) {
      normal(a, a) += ridge;
      for (std::size_t b = 0; b < a; ++b) normal(b, a) = normal(a, b);
    }
    Vector sol;
    try {
      sol = cholesky_solve(normal, rhs);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNotSPD) throw;
      fail(ErrorCode::kDegenerateRidge,
           "lagged design of latent row " + std::to_string(r) + " is rank deficient");
    }
    std::copy(sol.begin(), sol.end(), out.w.row(r).begin());
  }
  return out;
}

namespace {

TrmfModel fit_impl(const ObservedSeries& data, const Hyperparams& hyper, ARWeights weights,
                   bool learn_weights) {
  hyper.validate();
  if (data.observed_count() == 0) fail(ErrorCode::kEmptyMask, "no observed entries to fit");
  if (data.t_count() < weights.lags.m())
    fail(ErrorCode::kSeriesTooShort, "series of length " + std::to_string(data.t_count()) +
                                         " is shorter than m = " +
                                         std::to_string(weights.lags.m()));
  if (weights.k() != hyper.k) fail(ErrorCode::kDimensionMismatch, "weights rows must equal k");

  std::mt19937_64 rng(hyper.seed);
  std::normal_distribution<double> init(0.0, 0.1);
  DenseMatrix f(data.n(), hyper.k);
  DenseMatrix x(hyper.k, data.t_count());
  for (double& v : f.data()) v = init(rng);
  for (double& v : x.data()) v = init(rng);

  TrmfModel model{std::move(f), std::move(x), std::move(weights), hyper, {}};
  double prev = objective(data, model);
  model.fit_trace.push_back({0, prev});

  for (std::size_t it = 1; it <= hyper.max_outer_iters; ++it) {
    model.f_mat = update_f(data, model.x_mat, hyper.lambda_f);
    model.x_mat = update_x(data, model.f_mat, model.ar, hyper.lambda_x, hyper.eta, model.x_mat,
                           hyper.cg_tol, hyper.cg_max_iter);
    if (learn_weights) model.ar = update_w(model.x_mat, model.ar.lags, hyper.lambda_x, hyper.lambda_w);
    const double cur = objective(data, model);
    if (!std::isfinite(cur)) fail(ErrorCode::kNonFiniteEncountered, "objective after sweep");
    model.fit_trace.push_back({it, cur});
    if (std::abs(prev - cur) / (1.0 + std::abs(cur)) < hyper.rel_tol) break;
    prev = cur;
  }
  return model;
}

}  // namespace

TrmfModel fit(const ObservedSeries& data, const Hyperparams& hyper, const LagSet& lags) {
  return fit_impl(data, hyper, ARWeights(lags, hyper.k), true);
}

TrmfModel fit_fixed_weights(const ObservedSeries& data, const Hyperparams& hyper,
                            const ARWeights& weights) {
  return fit_impl(data, hyper, weights, false);
}

Vector naive_graph_costs(const DenseMatrix& x_mat, const LagSet& lags) {
  const std::size_t t_count = x_mat.cols();
  if (t_count <= lags.l_max())
    fail(ErrorCode::kSeriesTooShort, "need more than l_max time points");
  Vector costs(lags.size(), 0.0);
  for (std::size_t j = 0; j < lags.size(); ++j) {
    const std::size_t l = lags[j];
    for (std::size_t r = 0; r < x_mat.rows(); ++r) {
      auto x = x_mat.row(r);
      for (std::size_t t = l; t < t_count; ++t) {
        const double d = x[t] - x[t - l];
        costs[j] += d * d;
      }
    }
  }
  return costs;
}

Vector naive_graph_weights(const DenseMatrix& x_mat, const LagSet& lags,
                           WeightConstraint constraint) {
  const Vector costs = naive_graph_costs(x_mat, lags);
  Vector w(lags.size(), 0.0);
  if (constraint == WeightConstraint::kNonnegative) return w;
  std::size_t best = 0;
  for (std::size_t j = 1; j < costs.size(); ++j)
    if (costs[j] < costs[best]) best = j;
  w[best] = 1.0;
  return w;
}

}  // namespace trmf
