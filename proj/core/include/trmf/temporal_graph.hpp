#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "trmf/dense.hpp"
#include "trmf/lag_set.hpp"

namespace trmf {

// Time indices throughout this header are 0-based: node t stands for the
// 1-based time point t + 1, and the AR residual exists for t >= l_max.

/// Lag coefficients for one latent row, aligned with a LagSet. Lag 0 carries
/// the implicit weight -1 in the augmented view.
struct LagWeights {
  Vector wbar;

  /// Weight at `lag` over L u {0}: -1 at lag 0, 0 for lags not in the set.
  double augmented(const LagSet& lags, std::size_t lag) const;
};

/// {l in L u {0} : l - d in L u {0}}, ascending.
std::vector<std::size_t> delta_set(const LagSet& lags, std::size_t d);

struct GraphEdge {
  std::size_t t;  ///< lower endpoint
  std::size_t d;  ///< distance; the upper endpoint is t + d
  double weight;
};

/// Signed graph over T time points plus the diagonal correction D such that
/// the AR regularizer equals the graph regularizer + 1/2 x^T D x.
class TemporalGraph {
 public:
  TemporalGraph(std::size_t t_count, std::vector<GraphEdge> edges, Vector diag);

  std::size_t t_count() const noexcept { return t_count_; }
  /// Sorted by (t, d).
  std::span<const GraphEdge> edges() const noexcept { return edges_; }
  std::span<const double> diag() const noexcept { return diag_; }
  std::optional<double> edge_weight(std::size_t t, std::size_t d) const;

 private:
  std::size_t t_count_;
  std::vector<GraphEdge> edges_;
  Vector diag_;
};

/// Builds G^AR and D. D is accumulated from its three constituent sums
/// (squared terms, and cross terms indicated on the larger and on the
/// smaller lag of each pair).
TemporalGraph build_ar_graph(const LagSet& lags, const LagWeights& weights, std::size_t t_count);

/// 1/2 sum_{t >= l_max} (x_t - sum_l w_l x_{t-l})^2 + eta/2 ||x||^2
double ar_reg_value(std::span<const double> xbar, const LagSet& lags, const LagWeights& weights,
                    double eta);

/// 1/2 sum_edges w_e (x_t - x_{t+d})^2 + eta/2 ||x||^2
double laplacian_quadratic(const TemporalGraph& graph, std::span<const double> xbar, double eta);

/// out += scale * H v, H the Hessian of ar_reg_value. O(T |L|).
void accumulate_ar_hessian(const LagSet& lags, std::span<const double> wbar, double eta,
                           double scale, std::span<const double> v, std::span<double> out);

Vector ar_hessian_matvec(const LagSet& lags, const LagWeights& weights, double eta,
                         std::span<const double> v);

/// Dense symmetric boolean matrix.
class BoolMatrix {
 public:
  explicit BoolMatrix(std::size_t n) : n_(n), bits_(n * n, 0) {}
  std::size_t size() const noexcept { return n_; }
  bool operator()(std::size_t i, std::size_t j) const noexcept { return bits_[i * n_ + j] != 0; }
  void set(std::size_t i, std::size_t j) noexcept { bits_[i * n_ + j] = bits_[j * n_ + i] = 1; }
  friend bool operator==(const BoolMatrix&, const BoolMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<std::uint8_t> bits_;
};

/// Off-diagonal nonzero pattern of the AR Hessian, read off G^AR. Requires
/// every weight nonzero so that no entry cancels by accident.
BoolMatrix hessian_sparsity_pattern(const LagSet& lags, const LagWeights& weights,
                                    std::size_t t_count);

}  // namespace trmf
