#include "trmf_cli/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "trmf/baselines.hpp"
#include "trmf/csv.hpp"
#include "trmf/error.hpp"
#include "trmf/forecast.hpp"
#include "trmf/lag_set.hpp"
#include "trmf/metrics.hpp"
#include "trmf/model_io.hpp"
#include "trmf/parallel.hpp"
#include "trmf/synthetic.hpp"
#include "trmf_cli/bench.hpp"

namespace trmf::cli {
namespace {

using nlohmann::json;

json matrix_json(const DenseMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    rows.push_back(std::vector<double>(row.begin(), row.end()));
  }
  return rows;
}

void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_file(path, text);
  }
}

AggregateMode parse_aggregate(const std::string& s) {
  if (s == "none") return AggregateMode::kNone;
  if (s == "sum") return AggregateMode::kSum;
  if (s == "mean") return AggregateMode::kMean;
  fail(ErrorCode::kInvalidArgument, "unknown aggregation '" + s + "'");
}

struct DataFlags {
  std::string path;
  std::string aggregate = "none";
  std::size_t block = 4;

  void add(CLI::App* cmd, bool required) {
    auto* opt = cmd->add_option("--data", path, "Input CSV (rows = series, columns = time)");
    if (required) opt->required();
    cmd->add_option("--aggregate", aggregate, "Column aggregation: none|sum|mean")
        ->check(CLI::IsMember({"none", "sum", "mean"}));
    cmd->add_option("--block", block, "Columns per aggregated block");
  }
  ObservedSeries load() const {
    return load_csv(path, CsvOptions{parse_aggregate(aggregate), block});
  }
};

struct HyperFlags {
  Hyperparams h;
  std::optional<double> lambda, lambda_f, lambda_x, lambda_w;

  void add(CLI::App* cmd) {
    cmd->add_option("--k", h.k, "Latent dimension");
    cmd->add_option("--lambda", lambda, "Sets lambda_f, lambda_x and lambda_w together");
    cmd->add_option("--lambda-f", lambda_f);
    cmd->add_option("--lambda-x", lambda_x);
    cmd->add_option("--lambda-w", lambda_w);
    cmd->add_option("--eta", h.eta, "Strong-convexity weight");
    cmd->add_option("--max-iters", h.max_outer_iters, "Alternating sweeps");
    cmd->add_option("--tol", h.rel_tol, "Relative objective tolerance");
    cmd->add_option("--cg-tol", h.cg_tol);
    cmd->add_option("--cg-max-iter", h.cg_max_iter);
    cmd->add_option("--seed", h.seed);
  }
  Hyperparams resolve() const {
    Hyperparams out = h;
    if (lambda) out.lambda_f = out.lambda_x = out.lambda_w = *lambda;
    if (lambda_f) out.lambda_f = *lambda_f;
    if (lambda_x) out.lambda_x = *lambda_x;
    if (lambda_w) out.lambda_w = *lambda_w;
    out.validate();
    return out;
  }
};

// synth

struct SynthFlags {
  SyntheticConfig config;
  std::string lags = "1,8";
  std::string out, truth;
};

void run_synth(const SynthFlags& f, std::ostream& out) {
  SyntheticConfig config = f.config;
  const LagSet lags = parse_lag_set(f.lags);
  config.lags.assign(lags.lags().begin(), lags.lags().end());
  const SyntheticTruth truth = gen_synthetic(config);
  emit(out, f.out, format_csv(truth.y));

  std::string sidecar = f.truth;
  if (sidecar.empty() && !f.out.empty() && f.out != "-") sidecar = f.out + ".truth.json";
  if (sidecar.empty()) return;
  json j;
  j["seed"] = config.seed;
  j["n"] = config.n;
  j["t"] = config.t_count;
  j["k"] = config.k;
  j["lags"] = config.lags;
  j["sigma"] = truth.sigma;
  j["latent_sigma"] = truth.latent_sigma;
  j["f"] = matrix_json(truth.f_true);
  j["x"] = matrix_json(truth.x_true);
  j["w"] = matrix_json(truth.w_true.w);
  write_file(sidecar, j.dump(1) + "\n");
}

// fit

struct FitFlags {
  DataFlags data;
  HyperFlags hyper;
  std::string method = "trmf";
  std::string lags = "synthetic";
  std::string out;
};

AnyModel fit_any(const std::string& method, const ObservedSeries& data, const Hyperparams& h,
                 const LagSet& lags) {
  switch (parse_method(method)) {
    case Method::kTrmf: return fit(data, h, lags);
    case Method::kTcf: return fit_tcf(data, h);
    case Method::kMf: return fit_fixed_weights(data, h, plain_mf_weights(h.k));
    case Method::kSvdAr1: return fit_svd_ar1(data, h.k, h.lambda_x);
    case Method::kAr1: return fit_ar1_full(data, h.lambda_x);
    case Method::kMean: return fit_mean(data);
    case Method::kDlm: break;
  }
  fail(ErrorCode::kInvalidArgument, "dlm is not implemented");
}

void run_fit(const FitFlags& f, std::ostream& err) {
  const ObservedSeries data = f.data.load();
  const Hyperparams h = f.hyper.resolve();
  const AnyModel model = fit_any(f.method, data, h, parse_lag_set(f.lags));
  save_any_model(model, f.out);
  if (const auto* m = std::get_if<TrmfModel>(&model); m && !m->fit_trace.empty()) {
    err << "objective " << format_double(m->fit_trace.back().objective) << " after "
        << m->fit_trace.back().iteration << " sweeps\n";
  }
}

// forecast

struct ForecastFlags {
  std::string model;
  std::size_t horizon = 1;
  std::string out;
};

void run_forecast(const ForecastFlags& f, std::ostream& out) {
  const AnyModel any = load_any_model(f.model);
  DenseMatrix y;
  if (const auto* m = std::get_if<TrmfModel>(&any)) {
    y = forecast_series(*m, f.horizon).y_new;
  } else {
    y = forecast_baseline(std::get<BaselineModel>(any), f.horizon);
  }
  emit(out, f.out, format_csv(ObservedSeries::full(std::move(y))));
}

// impute

struct ImputeFlags {
  std::string model;
  DataFlags data;
  std::string out;
};

void run_impute(const ImputeFlags& f, std::ostream& out) {
  const AnyModel any = load_any_model(f.model);
  const ObservedSeries data = f.data.load();
  std::vector<CellIndex> targets;
  for (std::size_t i = 0; i < data.n(); ++i)
    for (std::size_t t = 0; t < data.t_count(); ++t)
      if (!data.observed(i, t)) targets.push_back({i, t});

  std::vector<ImputedValue> values;
  if (const auto* m = std::get_if<TrmfModel>(&any)) {
    values = impute(*m, targets);
  } else {
    const DenseMatrix rec = reconstruct_baseline(std::get<BaselineModel>(any));
    for (const auto& c : targets) {
      if (c.series >= rec.rows() || c.time >= rec.cols())
        fail(ErrorCode::kIndexOutOfBounds, "data is larger than the model");
      values.push_back({c.series, c.time, rec(c.series, c.time)});
    }
  }
  std::string text = "series,time,value\n";
  for (const auto& v : values)
    text += std::to_string(v.series) + "," + std::to_string(v.time) + "," +
            format_double(v.value) + "\n";
  emit(out, f.out, text);
}

// eval

struct EvalFlags {
  std::string pred, truth;
  std::string method = "model";
  std::string split_id = "test";
  std::string out;
};

bool is_triples(const std::string& text) { return text.rfind("series,time,value", 0) == 0; }

void parse_triples(const std::string& text, const ObservedSeries& truth,
                   std::vector<double>& pred, std::vector<double>& actual) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::size_t i = 0, t = 0;
    double v = 0.0;
    char tail = 0;
    if (std::sscanf(line.c_str(), "%zu,%zu,%lf%c", &i, &t, &v, &tail) != 3)
      fail(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": expected series,time,value");
    if (i >= truth.n() || t >= truth.t_count())
      fail(ErrorCode::kIndexOutOfBounds, "line " + std::to_string(line_no) + ": cell outside truth");
    if (!truth.observed(i, t)) continue;
    pred.push_back(v);
    actual.push_back(truth.value(i, t));
  }
}

void run_eval(const EvalFlags& f, std::ostream& out) {
  const ObservedSeries truth = load_csv(f.truth);
  const std::string text = read_file(f.pred);
  std::vector<double> pred, actual;
  if (is_triples(text)) {
    parse_triples(text, truth, pred, actual);
  } else {
    const ObservedSeries p = parse_csv(text);
    if (p.n() != truth.n() || p.t_count() != truth.t_count())
      fail(ErrorCode::kDimensionMismatch, "prediction and truth shapes differ");
    for (std::size_t i = 0; i < truth.n(); ++i) {
      for (std::size_t t = 0; t < truth.t_count(); ++t) {
        if (!truth.observed(i, t) || !p.observed(i, t)) continue;
        pred.push_back(p.value(i, t));
        actual.push_back(truth.value(i, t));
      }
    }
  }
  const EvalReport report{f.method, f.split_id, nd(pred, actual), nrmse(pred, actual), actual.size()};
  emit(out, f.out, std::string(kEvalReportHeader) + "\n" + format_report_row(report) + "\n");
}

// bench

struct BenchFlags {
  bool synth = false;
  SyntheticConfig synth_config;
  DataFlags data;
  std::string task = "forecast";
  std::string lags = "synthetic";
  std::string synth_lags = "1,8";
  std::vector<std::size_t> ks;
  std::vector<double> lambdas, lambda_f, lambda_x, lambda_w;
  std::string methods;
  BenchConfig config;
  std::string out, grid_out;
};

void run_bench(BenchFlags& f, std::ostream& out) {
  BenchConfig config = f.config;
  config.lags = parse_lag_set(f.lags);
  if (!f.ks.empty()) config.grid.ks = f.ks;
  if (!f.lambdas.empty()) config.grid.lambdas = f.lambdas;
  config.grid.lambda_f = f.lambda_f;
  config.grid.lambda_x = f.lambda_x;
  config.grid.lambda_w = f.lambda_w;
  if (!f.methods.empty()) config.methods = parse_methods(f.methods);
  config.base.validate();
  config.threads = thread_count_from_env();

  ObservedSeries data;
  if (f.synth) {
    SyntheticConfig sc = f.synth_config;
    sc.seed = config.seed;
    const LagSet lags = parse_lag_set(f.synth_lags);
    sc.lags.assign(lags.lags().begin(), lags.lags().end());
    data = gen_synthetic(sc).y;
  } else if (!f.data.path.empty()) {
    data = f.data.load();
  } else {
    fail(ErrorCode::kInvalidArgument, "bench needs --synth or --data");
  }

  const BenchOutcome outcome = f.task == "impute" ? run_impute_bench(data, config)
                                                  : run_forecast_bench(data, config);
  emit(out, f.out, format_summary(outcome));
  if (!f.grid_out.empty()) write_file(f.grid_out, format_grid(outcome));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Temporal regularized matrix factorization for multivariate time series"};
  app.require_subcommand(1);

  SynthFlags synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic low-rank AR dataset");
  synth_cmd->add_option("--seed", synth.config.seed);
  synth_cmd->add_option("--n", synth.config.n, "Number of series");
  synth_cmd->add_option("--t", synth.config.t_count, "Number of time points");
  synth_cmd->add_option("--k", synth.config.k, "Latent dimension");
  synth_cmd->add_option("--lags", synth.lags, "Lag set of the generating process");
  synth_cmd->add_option("--sigma", synth.config.sigma, "Observation noise std");
  synth_cmd->add_option("--latent-sigma", synth.config.latent_sigma, "Latent innovation std");
  synth_cmd->add_option("--out", synth.out, "CSV output (default stdout)");
  synth_cmd->add_option("--truth", synth.truth, "Ground-truth JSON (default <out>.truth.json)");

  FitFlags fitf;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a model and write it to a model file");
  fitf.data.add(fit_cmd, true);
  fitf.hyper.add(fit_cmd);
  fit_cmd->add_option("--method", fitf.method, "trmf|tcf|mf|svd_ar1|ar1|mean");
  fit_cmd->add_option("--lags", fitf.lags, "Lag set: list, ranges or preset name");
  fit_cmd->add_option("--out", fitf.out, "Model file")->required();

  ForecastFlags fc;
  auto* fc_cmd = app.add_subcommand("forecast", "Forecast the next horizon steps");
  fc_cmd->add_option("--model", fc.model)->required();
  fc_cmd->add_option("--horizon", fc.horizon);
  fc_cmd->add_option("--out", fc.out, "CSV output (default stdout)");

  ImputeFlags imp;
  auto* imp_cmd = app.add_subcommand("impute", "Fill the unobserved cells of a CSV");
  imp_cmd->add_option("--model", imp.model)->required();
  imp.data.add(imp_cmd, true);
  imp_cmd->add_option("--out", imp.out, "CSV output (default stdout)");

  EvalFlags ev;
  auto* ev_cmd = app.add_subcommand("eval", "Score predictions against a truth CSV");
  ev_cmd->add_option("--pred", ev.pred, "Matrix CSV or series,time,value triples")->required();
  ev_cmd->add_option("--truth", ev.truth)->required();
  ev_cmd->add_option("--method", ev.method);
  ev_cmd->add_option("--split-id", ev.split_id);
  ev_cmd->add_option("--out", ev.out);

  BenchFlags bf;
  bf.config.base.seed = 0;
  auto* bench_cmd = app.add_subcommand("bench", "Grid-search benchmark over methods");
  bench_cmd->add_flag("--synth", bf.synth, "Benchmark on generated data");
  bench_cmd->add_option("--n", bf.synth_config.n);
  bench_cmd->add_option("--t", bf.synth_config.t_count);
  bench_cmd->add_option("--synth-k", bf.synth_config.k, "Latent dimension of generated data");
  bench_cmd->add_option("--synth-lags", bf.synth_lags, "Lag set of generated data");
  bench_cmd->add_option("--sigma", bf.synth_config.sigma);
  bf.data.add(bench_cmd, false);
  bench_cmd->add_option("--task", bf.task)->check(CLI::IsMember({"forecast", "impute"}));
  bench_cmd->add_option("--horizon", bf.config.horizon);
  bench_cmd->add_option("--windows", bf.config.windows);
  bench_cmd->add_option("--lags", bf.lags, "Model lag set");
  bench_cmd->add_option("--k", bf.ks, "Grid over k")->delimiter(',');
  bench_cmd->add_option("--lambda", bf.lambdas, "Tied lambda grid")->delimiter(',');
  bench_cmd->add_option("--lambda-f", bf.lambda_f)->delimiter(',');
  bench_cmd->add_option("--lambda-x", bf.lambda_x)->delimiter(',');
  bench_cmd->add_option("--lambda-w", bf.lambda_w)->delimiter(',');
  bench_cmd->add_option("--eta", bf.config.base.eta);
  bench_cmd->add_option("--max-iters", bf.config.base.max_outer_iters);
  bench_cmd->add_option("--tol", bf.config.base.rel_tol);
  bench_cmd->add_option("--methods", bf.methods, "Comma-separated methods");
  bench_cmd->add_option("--observed", bf.config.observed_fraction, "Observed fraction (impute)");
  bench_cmd->add_option("--block-len", bf.config.block_len, "Occlusion block length (impute)");
  bench_cmd->add_option("--seed", bf.config.seed);
  bench_cmd->add_option("--out", bf.out, "Summary CSV (default stdout)");
  bench_cmd->add_option("--grid-out", bf.grid_out, "Per-grid-point CSV");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (synth_cmd->parsed()) {
      run_synth(synth, out);
    } else if (fit_cmd->parsed()) {
      run_fit(fitf, err);
    } else if (fc_cmd->parsed()) {
      run_forecast(fc, out);
    } else if (imp_cmd->parsed()) {
      run_impute(imp, out);
    } else if (ev_cmd->parsed()) {
      run_eval(ev, out);
    } else if (bench_cmd->parsed()) {
      bf.config.base.seed = bf.config.seed;
      run_bench(bf, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_solver_error(e.code()) ? kExitSolver : kExitConfig;
  }
  return kExitOk;
}

}  // namespace trmf::cli
