#include "trmf_cli/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <string>

#include "trmf/baselines.hpp"
#include "trmf/error.hpp"
#include "trmf/forecast.hpp"
#include "trmf/parallel.hpp"
#include "trmf/splits.hpp"

namespace trmf::cli {

std::string_view method_name(Method m) {
  switch (m) {
    case Method::kTrmf: return "trmf_ar";
    case Method::kTcf: return "tcf";
    case Method::kMf: return "mf";
    case Method::kSvdAr1: return "svd_ar1";
    case Method::kAr1: return "ar1";
    case Method::kMean: return "mean";
    case Method::kDlm: return "dlm";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  if (name == "trmf" || name == "trmf_ar") return Method::kTrmf;
  if (name == "tcf") return Method::kTcf;
  if (name == "mf") return Method::kMf;
  if (name == "svd_ar1") return Method::kSvdAr1;
  if (name == "ar1") return Method::kAr1;
  if (name == "mean") return Method::kMean;
  if (name == "dlm") return Method::kDlm;
  fail(ErrorCode::kInvalidArgument, "unknown method '" + std::string(name) + "'");
}

std::vector<Method> parse_methods(std::string_view list) {
  std::vector<Method> out;
  while (!list.empty()) {
    const auto comma = list.find(',');
    out.push_back(parse_method(list.substr(0, comma)));
    list = comma == std::string_view::npos ? std::string_view{} : list.substr(comma + 1);
  }
  if (out.empty()) fail(ErrorCode::kInvalidArgument, "method list is empty");
  return out;
}

std::vector<GridPoint> Grid::points() const {
  if (ks.empty()) fail(ErrorCode::kInvalidArgument, "k grid is empty");
  const bool untied = !lambda_f.empty() || !lambda_x.empty() || !lambda_w.empty();
  if (!untied && lambdas.empty()) fail(ErrorCode::kInvalidArgument, "lambda grid is empty");
  const auto& lf = lambda_f.empty() ? lambdas : lambda_f;
  const auto& lx = lambda_x.empty() ? lambdas : lambda_x;
  const auto& lw = lambda_w.empty() ? lambdas : lambda_w;
  if (lf.empty() || lx.empty() || lw.empty())
    fail(ErrorCode::kInvalidArgument, "lambda grid is empty");
  std::vector<GridPoint> out;
  for (std::size_t k : ks) {
    if (!untied) {
      for (double l : lambdas) out.push_back({k, l, l, l});
      continue;
    }
    for (double f : lf)
      for (double x : lx)
        for (double w : lw) out.push_back({k, f, x, w});
  }
  return out;
}

namespace {

bool needs_full_data(Method m) { return m == Method::kAr1 || m == Method::kSvdAr1; }

Hyperparams hyper_for(const BenchConfig& config, const GridPoint& p) {
  Hyperparams h = config.base;
  h.k = p.k;
  h.lambda_f = p.lambda_f;
  h.lambda_x = p.lambda_x;
  h.lambda_w = p.lambda_w;
  return h;
}

// Grid points relevant to a method; baselines ignore parts of the grid.
std::vector<GridPoint> points_for(Method m, const std::vector<GridPoint>& all) {
  std::vector<GridPoint> out;
  std::set<std::pair<std::size_t, double>> seen;
  for (const auto& p : all) {
    switch (m) {
      case Method::kMean:
        if (out.empty()) out.push_back({0, 0, 0, 0});
        break;
      case Method::kAr1:
        if (seen.insert({0, p.lambda_x}).second) out.push_back({0, 0, p.lambda_x, 0});
        break;
      case Method::kSvdAr1:
        if (seen.insert({p.k, p.lambda_x}).second) out.push_back({p.k, 0, p.lambda_x, 0});
        break;
      case Method::kDlm:
        break;
      default:
        out.push_back(p);
    }
  }
  return out;
}

TrmfModel fit_trmf_family(Method m, const ObservedSeries& train, const BenchConfig& config,
                          const GridPoint& p) {
  const Hyperparams h = hyper_for(config, p);
  switch (m) {
    case Method::kTrmf: return fit(train, h, config.lags);
    case Method::kTcf: return fit_fixed_weights(train, h, tcf_weights(h.k));
    case Method::kMf: return fit_fixed_weights(train, h, plain_mf_weights(h.k));
    default: fail(ErrorCode::kInvalidArgument, "not a factorization method");
  }
}

DenseMatrix predict_forecast(Method m, const ObservedSeries& train, const BenchConfig& config,
                             const GridPoint& p, std::size_t horizon) {
  switch (m) {
    case Method::kTrmf:
    case Method::kTcf:
    case Method::kMf:
      return forecast_series(fit_trmf_family(m, train, config, p), horizon).y_new;
    case Method::kSvdAr1: return forecast_baseline(fit_svd_ar1(train, p.k, p.lambda_x), horizon);
    case Method::kAr1: return forecast_baseline(fit_ar1_full(train, p.lambda_x), horizon);
    case Method::kMean: return forecast_baseline(fit_mean(train), horizon);
    case Method::kDlm: break;
  }
  fail(ErrorCode::kInvalidArgument, "dlm is not implemented");
}

DenseMatrix predict_in_sample(Method m, const ObservedSeries& train, const BenchConfig& config,
                              const GridPoint& p) {
  switch (m) {
    case Method::kTrmf:
    case Method::kTcf:
    case Method::kMf: {
      const TrmfModel model = fit_trmf_family(m, train, config, p);
      return matmul(model.f_mat, model.x_mat);
    }
    case Method::kMean: return reconstruct_baseline(fit_mean(train));
    default: break;
  }
  fail(ErrorCode::kMissingValuesUnsupported,
       std::string(method_name(m)) + ": missing values unsupported");
}

struct Job {
  Method method;
  GridPoint point;
};

template <typename Score>
BenchOutcome run_grid(const BenchConfig& config, bool data_complete, std::string split_id,
                      Score score) {
  const auto all_points = config.grid.points();
  std::vector<Job> jobs;
  std::vector<MethodSummary> summary;
  for (Method m : config.methods) {
    MethodSummary s;
    s.method = m;
    s.supported = m != Method::kDlm && (data_complete || !needs_full_data(m));
    summary.push_back(s);
    if (!s.supported) continue;
    for (const auto& p : points_for(m, all_points)) jobs.push_back({m, p});
  }

  std::vector<GridResult> results(jobs.size());
  parallel_for(jobs.size(), config.threads, [&](std::size_t j) {
    GridResult& r = results[j];
    r.method = jobs[j].method;
    r.point = jobs[j].point;
    try {
      std::vector<double> pred, truth;
      score(jobs[j].method, jobs[j].point, pred, truth);
      r.nd = nd(pred, truth);
      r.nrmse = nrmse(pred, truth);
      r.n_test = truth.size();
      r.ok = true;
    } catch (const Error& e) {
      r.error = e.what();
    }
  });

  for (auto& s : summary) {
    for (const auto& r : results) {
      if (r.method != s.method || !r.ok) continue;
      if (!s.ok || r.nd < s.best_nd) {
        s.best_nd = r.nd;
        s.n_test = r.n_test;
        s.best_nd_point = r.point;
      }
      if (!s.ok || r.nrmse < s.best_nrmse) s.best_nrmse = r.nrmse;
      s.ok = true;
    }
  }
  return BenchOutcome{std::move(split_id), std::move(results), std::move(summary)};
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), pattern, v);
  return buf;
}

}  // namespace

BenchOutcome run_forecast_bench(const ObservedSeries& data, const BenchConfig& config) {
  const SplitSpec split = rolling_splits(data.t_count(), config.horizon, config.windows);
  bool complete = true;
  for (const auto& w : split.windows)
    complete = complete && data.slice_time(0, w.train_end).fully_observed();
  const std::string split_id =
      "rolling-h" + std::to_string(config.horizon) + "-w" + std::to_string(config.windows);

  return run_grid(config, complete, split_id,
                  [&](Method m, const GridPoint& p, std::vector<double>& pred,
                      std::vector<double>& truth) {
                    for (const auto& w : split.windows) {
                      const ObservedSeries train = data.slice_time(0, w.train_end);
                      const DenseMatrix y = predict_forecast(m, train, config, p, w.horizon);
                      for (std::size_t i = 0; i < data.n(); ++i) {
                        for (std::size_t j = 0; j < w.horizon; ++j) {
                          const std::size_t t = w.train_end + j;
                          if (!data.observed(i, t)) continue;
                          pred.push_back(y(i, j));
                          truth.push_back(data.value(i, t));
                        }
                      }
                    }
                  });
}

BenchOutcome run_impute_bench(const ObservedSeries& truth_data, const BenchConfig& config) {
  const ObservedSeries train =
      occlude_blocks(truth_data, config.observed_fraction, config.block_len, config.seed);
  const std::string split_id =
      "occlude-" + fmt("%g", config.observed_fraction) + "-b" + std::to_string(config.block_len);

  return run_grid(config, false, split_id,
                  [&](Method m, const GridPoint& p, std::vector<double>& pred,
                      std::vector<double>& truth) {
                    const DenseMatrix y = predict_in_sample(m, train, config, p);
                    for (std::size_t i = 0; i < truth_data.n(); ++i) {
                      for (std::size_t t = 0; t < truth_data.t_count(); ++t) {
                        if (!truth_data.observed(i, t) || train.observed(i, t)) continue;
                        pred.push_back(y(i, t));
                        truth.push_back(truth_data.value(i, t));
                      }
                    }
                  });
}

std::string format_summary(const BenchOutcome& outcome) {
  std::string out = std::string(kEvalReportHeader) + "\n";
  for (const auto& s : outcome.summary) {
    const std::string name(method_name(s.method));
    if (!s.supported) {
      out += name + "," + outcome.split_id + ",unsupported,unsupported,0\n";
    } else if (!s.ok) {
      out += name + "," + outcome.split_id + ",failed,failed,0\n";
    } else {
      out += format_report_row({name, outcome.split_id, s.best_nd, s.best_nrmse, s.n_test}) + "\n";
    }
  }
  return out;
}

std::string format_grid(const BenchOutcome& outcome) {
  std::string out = "method,k,lambda_f,lambda_x,lambda_w,nd,nrmse,n_test,status\n";
  for (const auto& r : outcome.grid) {
    out += std::string(method_name(r.method)) + "," + std::to_string(r.point.k) + "," +
           fmt("%g", r.point.lambda_f) + "," + fmt("%g", r.point.lambda_x) + "," +
           fmt("%g", r.point.lambda_w) + ",";
    if (r.ok) {
      out += fmt("%.6f", r.nd) + "," + fmt("%.6f", r.nrmse) + "," + std::to_string(r.n_test) + ",ok\n";
    } else {
      std::string msg = r.error;
      std::replace(msg.begin(), msg.end(), ',', ';');
      out += ",,0," + msg + "\n";
    }
  }
  return out;
}

}  // namespace trmf::cli
