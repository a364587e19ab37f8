#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "trmf/error.hpp"
#include "trmf/lag_set.hpp"
#include "trmf/temporal_graph.hpp"

namespace trmf {
namespace {

using Lags = std::vector<std::size_t>;

double diag_form(const TemporalGraph& g, std::span<const double> x) {
  double s = 0.0;
  for (std::size_t t = 0; t < x.size(); ++t) s += g.diag()[t] * x[t] * x[t];
  return 0.5 * s;
}

TEST(LagSet, Validation) {
  const LagSet l({1, 4});
  EXPECT_EQ(l.l_max(), 4u);
  EXPECT_EQ(l.m(), 5u);
  EXPECT_TRUE(l.contains(4));
  EXPECT_FALSE(l.contains(2));
  EXPECT_EQ(l.index_of(4), 1u);
  EXPECT_EQ(l.augmented(), (Lags{0, 1, 4}));
  EXPECT_THROW(LagSet({}), Error);
  EXPECT_THROW(LagSet({0, 1}), Error);
  EXPECT_THROW(LagSet({2, 1}), Error);
  EXPECT_THROW(LagSet({1, 1}), Error);
}

TEST(LagSet, Parse) {
  EXPECT_EQ(parse_lag_set("1,4").lags().size(), 2u);
  EXPECT_EQ(parse_lag_set("1:8"), LagSet({1, 2, 3, 4, 5, 6, 7, 8}));
  EXPECT_EQ(parse_lag_set("synthetic"), parse_lag_set("1:8"));
  const LagSet hourly = parse_lag_set("hourly");
  EXPECT_EQ(hourly.size(), 48u);
  EXPECT_EQ(hourly.l_max(), 191u);
  EXPECT_EQ(parse_lag_set("weekly"), parse_lag_set("1:10,50:56"));
  EXPECT_THROW(parse_lag_set("1,x"), Error);
  EXPECT_THROW(parse_lag_set("4:1"), Error);
  EXPECT_THROW(parse_lag_set(""), Error);
}

TEST(DeltaSet, Examples) {
  const LagSet l({1, 4});
  EXPECT_EQ(delta_set(l, 3), (Lags{4}));
  EXPECT_TRUE(delta_set(l, 2).empty());
  EXPECT_EQ(delta_set(l, 1), (Lags{1}));
  EXPECT_EQ(delta_set(l, 4), (Lags{4}));
  EXPECT_EQ(delta_set(LagSet({1}), 1), (Lags{1}));
}

TEST(LagWeightsView, AugmentedHasMinusOneAtZero) {
  const LagSet l({2, 5});
  const LagWeights w{{0.3, -0.2}};
  EXPECT_EQ(w.augmented(l, 0), -1.0);
  EXPECT_EQ(w.augmented(l, 2), 0.3);
  EXPECT_EQ(w.augmented(l, 3), 0.0);
}

TEST(BuildArGraph, InteriorEdgesForL14) {
  const LagSet l({1, 4});
  const double w1 = 0.5, w4 = 0.3;
  const TemporalGraph g = build_ar_graph(l, LagWeights{{w1, w4}}, 30);
  const std::size_t t = 12;
  EXPECT_NEAR(*g.edge_weight(t, 1), w1, 1e-15);
  EXPECT_NEAR(*g.edge_weight(t, 4), w4, 1e-15);
  EXPECT_NEAR(*g.edge_weight(t, 3), -w1 * w4, 1e-15);
  EXPECT_FALSE(g.edge_weight(t, 2).has_value());
  EXPECT_NEAR(g.diag()[t], 0.04, 1e-15);
}

TEST(BuildArGraph, ChainDiagonalVanishesInside) {
  const TemporalGraph g = build_ar_graph(LagSet({1}), LagWeights{{1.0}}, 10);
  for (std::size_t t = 1; t + 1 < 10; ++t) EXPECT_NEAR(g.diag()[t], 0.0, 1e-15) << t;
}

TEST(BuildArGraph, SignedEdges) {
  const TemporalGraph g = build_ar_graph(LagSet({1, 4}), LagWeights{{0.4, 0.7}}, 20);
  EXPECT_LT(*g.edge_weight(8, 3), 0.0);
  EXPECT_GT(*g.edge_weight(8, 1), 0.0);
}

TEST(BuildArGraph, TooShort) {
  try {
    build_ar_graph(LagSet({1, 4}), LagWeights{{0.1, 0.1}}, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSeriesTooShort);
  }
}

// Off-diagonals of the explicit Hessian are -G and its diagonal is
// eta + D_t + (sum of incident edge weights).
TEST(BuildArGraph, MatchesExplicitHessian) {
  oracle::Rng rng(21);
  for (int rep = 0; rep < 60; ++rep) {
    const LagSet lags = oracle::random_lags(rng, 4, 12);
    const std::size_t t_count = lags.m() + rng() % 30;
    const Vector w = oracle::random_vector(lags.size(), rng);
    const double eta = 0.3;
    const DenseMatrix h = oracle::ar_hessian(lags, w, eta, t_count);
    const TemporalGraph g = build_ar_graph(lags, LagWeights{w}, t_count);
    Vector incident(t_count, 0.0);
    for (const GraphEdge& e : g.edges()) {
      EXPECT_NEAR(h(e.t, e.t + e.d), -e.weight, 1e-12);
      incident[e.t] += e.weight;
      incident[e.t + e.d] += e.weight;
    }
    for (std::size_t s = 0; s < t_count; ++s) {
      EXPECT_NEAR(h(s, s), eta + g.diag()[s] + incident[s], 1e-12) << s;
      for (std::size_t t = s + 1; t < t_count; ++t)
        if (!g.edge_weight(s, t - s)) {
          EXPECT_NEAR(h(s, t), 0.0, 1e-15);
        }
    }
  }
}

TEST(BuildArGraph, InteriorDiagonalIsSquaredSum) {
  oracle::Rng rng(4);
  for (int rep = 0; rep < 30; ++rep) {
    const LagSet lags = oracle::random_lags(rng, 4, 8);
    const Vector w = oracle::random_vector(lags.size(), rng);
    const std::size_t t_count = 3 * lags.m() + 5;
    const TemporalGraph g = build_ar_graph(lags, LagWeights{w}, t_count);
    double sum = -1.0;
    for (double v : w) sum += v;
    for (std::size_t t = lags.l_max(); t + lags.l_max() < t_count; ++t)
      EXPECT_NEAR(g.diag()[t], sum * sum, 1e-12);
  }
}

TEST(ArRegValue, HandExamples) {
  EXPECT_DOUBLE_EQ(ar_reg_value(Vector{1, 2}, LagSet({1}), LagWeights{{0.0}}, 2.0), 7.0);
  EXPECT_DOUBLE_EQ(ar_reg_value(Vector{1, 2, 4}, LagSet({1}), LagWeights{{1.0}}, 0.0), 2.5);
  EXPECT_EQ(ar_reg_value(Vector(9, 0.0), LagSet({1, 3}), LagWeights{{0.7, -0.2}}, 1.5), 0.0);
}

TEST(ArRegValue, MatchesDefinition) {
  oracle::Rng rng(8);
  for (int rep = 0; rep < 50; ++rep) {
    const LagSet lags = oracle::random_lags(rng, 4, 10);
    const Vector x = oracle::random_vector(lags.m() + rng() % 20, rng);
    const Vector w = oracle::random_vector(lags.size(), rng);
    EXPECT_NEAR(ar_reg_value(x, lags, LagWeights{w}, 0.7), oracle::ar_value(x, lags, w, 0.7), 1e-12);
  }
}

TEST(LaplacianQuadratic, Examples) {
  const TemporalGraph single(2, {GraphEdge{0, 1, 1.0}}, Vector(2, 0.0));
  EXPECT_DOUBLE_EQ(laplacian_quadratic(single, Vector{1, 3}, 0.0), 2.0);
  const TemporalGraph chain = build_ar_graph(LagSet({1}), LagWeights{{1.0}}, 6);
  EXPECT_NEAR(laplacian_quadratic(chain, Vector(6, 2.5), 0.0), 0.0, 1e-15);
  try {
    laplacian_quadratic(single, Vector{1, 2, 3}, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(LaplacianQuadratic, ChainIdentity) {
  oracle::Rng rng(2);
  const LagSet l({1});
  const LagWeights w{{1.0}};
  const TemporalGraph g = build_ar_graph(l, w, 12);
  const Vector x = oracle::random_vector(12, rng);
  EXPECT_NEAR(laplacian_quadratic(g, x, 0.4), ar_reg_value(x, l, w, 0.4) - diag_form(g, x), 1e-12);
}

TEST(GraphIdentity, RandomInstances) {
  oracle::Rng rng(1);
  for (int rep = 0; rep < 200; ++rep) {
    const LagSet lags = oracle::random_lags(rng, 4, 12);
    const std::size_t t_count = lags.m() + rng() % (65 - lags.m());
    const LagWeights w{oracle::random_vector(lags.size(), rng)};
    const Vector x = oracle::random_vector(t_count, rng, -2.0, 2.0);
    const double eta = std::array{0.0, 0.1, 1.0}[rep % 3];
    const double tr = ar_reg_value(x, lags, w, eta);
    const TemporalGraph g = build_ar_graph(lags, w, t_count);
    EXPECT_LE(std::abs(tr - (laplacian_quadratic(g, x, eta) + diag_form(g, x))), 1e-9 * (1 + std::abs(tr)));
  }
}

// With zero weights the residual reduces to x_t itself for t >= l_max, so H
// is eta I plus the identity on those time points.
TEST(ArHessian, ZeroWeights) {
  const Vector v{1, -2, 3, 4, 5};
  const Vector hv = ar_hessian_matvec(LagSet({1, 2}), LagWeights{{0.0, 0.0}}, 0.5, v);
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_DOUBLE_EQ(hv[i], (i >= 2 ? 1.5 : 0.5) * v[i]);
}

TEST(ArHessian, MatchesExplicitMatrix) {
  oracle::Rng rng(12);
  for (int rep = 0; rep < 40; ++rep) {
    const LagSet lags = oracle::random_lags(rng, 4, 10);
    const std::size_t t_count = lags.m() + rng() % (41 - lags.m());
    const Vector w = oracle::random_vector(lags.size(), rng);
    const Vector v = oracle::random_vector(t_count, rng);
    const Vector hv = ar_hessian_matvec(lags, LagWeights{w}, 0.2, v);
    const Vector ref = matvec(oracle::ar_hessian(lags, w, 0.2, t_count), v);
    EXPECT_LE(oracle::max_abs_diff(hv, ref), 1e-10 * (1.0 + norm2(ref)));
  }
}

TEST(ArHessian, QuadraticFormAndFiniteDifference) {
  oracle::Rng rng(13);
  const LagSet lags({1, 3, 7});
  const LagWeights w{{0.6, -0.3, 0.2}};
  const double eta = 0.8;
  const Vector x = oracle::random_vector(25, rng);
  const Vector v = oracle::random_vector(25, rng);
  const Vector hv = ar_hessian_matvec(lags, w, eta, v);
  EXPECT_NEAR(dot(v, hv), 2.0 * ar_reg_value(v, lags, w, eta), 1e-10);

  // Gradient from the residual operator: A^T A x + eta x.
  const DenseMatrix a = oracle::ar_residual_operator(lags, w.wbar, x.size());
  auto grad = [&](const Vector& p) {
    Vector g = matvec(a.transpose(), matvec(a, p));
    axpy(eta, p, g);
    return g;
  };
  const double eps = 1e-6;
  Vector shifted = x;
  axpy(eps, v, shifted);
  const Vector g0 = grad(x), g1 = grad(shifted);
  for (std::size_t i = 0; i < x.size(); ++i)
    EXPECT_NEAR((g1[i] - g0[i]) / eps, hv[i], 1e-5 * (1.0 + std::abs(hv[i])));

  // The gradient itself against central differences of the value.
  auto tr = [&](std::span<const double> p) { return ar_reg_value(p, lags, w, eta); };
  EXPECT_LT(oracle::max_abs_diff(oracle::numeric_gradient(tr, x, 1e-5), g0), 1e-7);
}

TEST(ArHessian, Convexity) {
  oracle::Rng rng(17);
  for (int rep = 0; rep < 30; ++rep) {
    const LagSet lags = oracle::random_lags(rng, 4, 8);
    const std::size_t t_count = lags.m() + rng() % (41 - lags.m());
    const double eta = rep % 2 ? 0.1 : 1.0;
    const DenseMatrix h = oracle::ar_hessian(lags, oracle::random_vector(lags.size(), rng), eta, t_count);
    EXPECT_GE(oracle::min_eigenvalue(h), eta - 1e-8);
  }
}

TEST(SparsityPattern, ChainIsTridiagonal) {
  const BoolMatrix p = hessian_sparsity_pattern(LagSet({1}), LagWeights{{0.7}}, 8);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j)
      if (i != j) {
        EXPECT_EQ(p(i, j), i + 1 == j || j + 1 == i);
      }
}

TEST(SparsityPattern, L14Distances) {
  const BoolMatrix p = hessian_sparsity_pattern(LagSet({1, 4}), LagWeights{{0.5, 0.3}}, 20);
  for (std::size_t i = 0; i < 20; ++i) {
    for (std::size_t j = i + 1; j < 20; ++j) {
      const std::size_t d = j - i;
      if (d == 2 || d > 4) {
        EXPECT_FALSE(p(i, j));
      }
    }
  }
  EXPECT_TRUE(p(8, 9));
  EXPECT_TRUE(p(8, 11));
  EXPECT_TRUE(p(8, 12));
  EXPECT_THROW(hessian_sparsity_pattern(LagSet({1, 4}), LagWeights{{0.5, 0.0}}, 20), Error);
}

TEST(SparsityPattern, MatchesExplicitHessian) {
  oracle::Rng rng(19);
  for (int rep = 0; rep < 50; ++rep) {
    const LagSet lags = oracle::random_lags(rng, 4, 8);
    const std::size_t t_count = lags.m() + rng() % (41 - lags.m());
    Vector w = oracle::random_vector(lags.size(), rng, 0.2, 0.9);
    for (double& v : w)
      if (rng() % 2) v = -v;
    const DenseMatrix h = oracle::ar_hessian(lags, w, 1.0, t_count);
    const BoolMatrix p = hessian_sparsity_pattern(lags, LagWeights{w}, t_count);
    for (std::size_t i = 0; i < t_count; ++i)
      for (std::size_t j = 0; j < t_count; ++j)
        if (i != j) {
          EXPECT_EQ(p(i, j), std::abs(h(i, j)) > 1e-12) << i << "," << j;
        }
  }
}

}  // namespace
}  // namespace trmf
