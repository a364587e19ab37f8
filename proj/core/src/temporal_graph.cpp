#include "trmf/temporal_graph.hpp"

#include <algorithm>
#include <string>

#include "trmf/error.hpp"

namespace trmf {

namespace {

void check_weights(const LagSet& lags, std::span<const double> wbar) {
  if (wbar.size() != lags.size())
    fail(ErrorCode::kDimensionMismatch, "lag weights have " + std::to_string(wbar.size()) +
                                            " entries for " + std::to_string(lags.size()) +
                                            " lags");
}

void check_length(const LagSet& lags, std::size_t t_count) {
  if (t_count < lags.m())
    fail(ErrorCode::kSeriesTooShort, "series of length " + std::to_string(t_count) +
                                         " needs at least " + std::to_string(lags.m()) +
                                         " points");
}

// The residual anchored at time t + lag exists iff l_max <= t + lag <= T - 1.
bool anchored(std::size_t t, std::size_t lag, std::size_t l_max, std::size_t t_count) {
  const std::size_t tau = t + lag;
  return tau >= l_max && tau < t_count;
}

}  // namespace

double LagWeights::augmented(const LagSet& lags, std::size_t lag) const {
  if (lag == 0) return -1.0;
  const std::size_t idx = lags.index_of(lag);
  return idx == lags.size() ? 0.0 : wbar[idx];
}

std::vector<std::size_t> delta_set(const LagSet& lags, std::size_t d) {
  if (d < 1) fail(ErrorCode::kInvalidArgument, "edge distance must be >= 1");
  std::vector<std::size_t> out;
  for (std::size_t l : lags.augmented())
    if (l >= d && (l == d || lags.contains(l - d))) out.push_back(l);
  return out;
}

TemporalGraph::TemporalGraph(std::size_t t_count, std::vector<GraphEdge> edges, Vector diag)
    : t_count_(t_count), edges_(std::move(edges)), diag_(std::move(diag)) {
  if (diag_.size() != t_count_) fail(ErrorCode::kDimensionMismatch, "diag length must equal T");
  std::sort(edges_.begin(), edges_.end(), [](const GraphEdge& a, const GraphEdge& b) {
    return a.t != b.t ? a.t < b.t : a.d < b.d;
  });
  for (const auto& e : edges_)
    if (e.d == 0 || e.t + e.d >= t_count_)
      fail(ErrorCode::kIndexOutOfBounds, "edge endpoint outside the series");
}

std::optional<double> TemporalGraph::edge_weight(std::size_t t, std::size_t d) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{t, d},
                             [](const GraphEdge& e, const std::pair<std::size_t, std::size_t>& k) {
                               return e.t != k.first ? e.t < k.first : e.d < k.second;
                             });
  if (it == edges_.end() || it->t != t || it->d != d) return std::nullopt;
  return it->weight;
}

TemporalGraph build_ar_graph(const LagSet& lags, const LagWeights& weights, std::size_t t_count) {
  check_weights(lags, weights.wbar);
  check_length(lags, t_count);
  const std::size_t l_max = lags.l_max();
  const auto w = [&](std::size_t lag) { return weights.augmented(lags, lag); };

  std::vector<std::vector<std::size_t>> deltas(l_max + 1);
  for (std::size_t d = 1; d <= l_max; ++d) deltas[d] = delta_set(lags, d);

  std::vector<GraphEdge> edges;
  for (std::size_t t = 0; t < t_count; ++t) {
    for (std::size_t d = 1; d <= l_max && t + d < t_count; ++d) {
      bool present = false;
      double weight = 0.0;
      for (std::size_t l : deltas[d]) {
        if (!anchored(t, l, l_max, t_count)) continue;
        present = true;
        weight -= w(l) * w(l - d);
      }
      if (present) edges.push_back({t, d, weight});
    }
  }

  Vector diag(t_count, 0.0);
  const auto aug = lags.augmented();
  for (std::size_t t = 0; t < t_count; ++t) {
    double squares = 0.0;
    for (std::size_t l : aug)
      if (anchored(t, l, l_max, t_count)) squares += w(l) * w(l);
    double cross_upper = 0.0;  // x_t enters as the older endpoint x_{tau - l}
    double cross_lower = 0.0;  // x_t enters as the newer endpoint x_{tau - l + d}
    for (std::size_t d = 1; d <= l_max; ++d) {
      for (std::size_t l : deltas[d]) {
        const double prod = w(l) * w(l - d);
        if (anchored(t, l, l_max, t_count)) cross_upper += prod;
        if (anchored(t, l - d, l_max, t_count)) cross_lower += prod;
      }
    }
    diag[t] = squares + cross_upper + cross_lower;
  }
  return TemporalGraph(t_count, std::move(edges), std::move(diag));
}

double ar_reg_value(std::span<const double> xbar, const LagSet& lags, const LagWeights& weights,
                    double eta) {
  check_weights(lags, weights.wbar);
  check_length(lags, xbar.size());
  double fit = 0.0;
  for (std::size_t t = lags.l_max(); t < xbar.size(); ++t) {
    double r = xbar[t];
    for (std::size_t j = 0; j < lags.size(); ++j) r -= weights.wbar[j] * xbar[t - lags[j]];
    fit += r * r;
  }
  return 0.5 * fit + 0.5 * eta * dot(xbar, xbar);
}

double laplacian_quadratic(const TemporalGraph& graph, std::span<const double> xbar, double eta) {
  if (xbar.size() != graph.t_count())
    fail(ErrorCode::kDimensionMismatch, "vector length differs from graph size");
  double s = 0.0;
  for (const auto& e : graph.edges()) {
    const double diff = xbar[e.t] - xbar[e.t + e.d];
    s += e.weight * diff * diff;
  }
  return 0.5 * s + 0.5 * eta * dot(xbar, xbar);
}

void accumulate_ar_hessian(const LagSet& lags, std::span<const double> wbar, double eta,
                           double scale, std::span<const double> v, std::span<double> out) {
  check_weights(lags, wbar);
  check_length(lags, v.size());
  if (out.size() != v.size()) fail(ErrorCode::kDimensionMismatch, "output length differs");
  const std::size_t n_lags = lags.size();
  for (std::size_t t = 0; t < v.size(); ++t) out[t] += scale * eta * v[t];
  // H = eta I + A^T A with (A v)_t = v_t - sum_l w_l v_{t-l}.
  for (std::size_t t = lags.l_max(); t < v.size(); ++t) {
    double r = v[t];
    for (std::size_t j = 0; j < n_lags; ++j) r -= wbar[j] * v[t - lags[j]];
    r *= scale;
    out[t] += r;
    for (std::size_t j = 0; j < n_lags; ++j) out[t - lags[j]] -= wbar[j] * r;
  }
}

Vector ar_hessian_matvec(const LagSet& lags, const LagWeights& weights, double eta,
                         std::span<const double> v) {
  Vector out(v.size(), 0.0);
  accumulate_ar_hessian(lags, weights.wbar, eta, 1.0, v, out);
  return out;
}

BoolMatrix hessian_sparsity_pattern(const LagSet& lags, const LagWeights& weights,
                                    std::size_t t_count) {
  check_weights(lags, weights.wbar);
  for (double w : weights.wbar)
    if (w == 0.0) fail(ErrorCode::kInvalidArgument, "sparsity pattern needs nonzero weights");
  const TemporalGraph graph = build_ar_graph(lags, weights, t_count);
  BoolMatrix pattern(t_count);
  for (const auto& e : graph.edges())
    if (e.weight != 0.0) pattern.set(e.t, e.t + e.d);
  return pattern;
}

}  // namespace trmf
