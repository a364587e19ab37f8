#include "trmf/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "trmf/error.hpp"

namespace trmf {

namespace {

bool finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

DenseMatrix cholesky_factor(const DenseMatrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) fail(ErrorCode::kDimensionMismatch, "cholesky requires a square matrix");

  double scale = 1.0;
  for (double v : a.data()) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(a(i, j) - a(j, i)) > 1e-10 * scale)
        fail(ErrorCode::kNotSPD, "matrix is not symmetric at (" + std::to_string(i) + ", " +
                                     std::to_string(j) + ")");

  DenseMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double diag = a(j, j);
    for (std::size_t p = 0; p < j; ++p) diag -= l(j, p) * l(j, p);
    if (!(diag > 0.0))
      fail(ErrorCode::kNotSPD, "non-positive pivot at column " + std::to_string(j));
    const double ljj = std::sqrt(diag);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t p = 0; p < j; ++p) s -= l(i, p) * l(j, p);
      l(i, j) = s / ljj;
    }
  }
  return l;
}

Vector cholesky_substitute(const DenseMatrix& lower, std::span<const double> b) {
  const std::size_t n = lower.rows();
  if (b.size() != n) fail(ErrorCode::kDimensionMismatch, "rhs length differs from factor size");
  Vector y(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = 0; p < i; ++p) y[i] -= lower(i, p) * y[p];
    y[i] /= lower(i, i);
  }
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t p = ii + 1; p < n; ++p) y[ii] -= lower(p, ii) * y[p];
    y[ii] /= lower(ii, ii);
  }
  return y;
}

Vector cholesky_solve(const DenseMatrix& a, std::span<const double> b) {
  if (b.size() != a.rows()) fail(ErrorCode::kDimensionMismatch, "rhs length differs from matrix");
  return cholesky_substitute(cholesky_factor(a), b);
}

CgResult conjugate_gradient(const LinearOperator& op, std::span<const double> b,
                            std::span<const double> x0, double tol, std::size_t max_iter) {
  const std::size_t n = op.dim;
  if (b.size() != n || x0.size() != n)
    fail(ErrorCode::kDimensionMismatch, "cg operand lengths differ from operator dim");
  if (!(tol > 0.0)) fail(ErrorCode::kInvalidArgument, "cg tolerance must be positive");

  CgResult res;
  res.x.assign(x0.begin(), x0.end());
  const double b_norm = norm2(b);
  if (b_norm == 0.0) {
    // SPD => the unique solution is zero.
    res.x.assign(n, 0.0);
    res.residual_history.push_back(0.0);
    res.converged = true;
    return res;
  }
  const double target = tol * b_norm;

  Vector r(n), ar(n), p(n), ap(n);
  op.apply(res.x, ar);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - ar[i];
  double r_norm = norm2(r);
  res.residual_history.push_back(r_norm);
  if (!std::isfinite(r_norm)) fail(ErrorCode::kNonFiniteEncountered, "initial residual");
  if (r_norm <= target) {
    res.converged = true;
    return res;
  }

  op.apply(r, ar);
  p = r;
  ap = ar;
  double r_ar = dot(r, ar);

  for (std::size_t it = 0; it < max_iter; ++it) {
    const double ap_sq = dot(ap, ap);
    if (!(ap_sq > 0.0) || !(r_ar > 0.0)) break;  // breakdown: exact solution reached
    const double alpha = r_ar / ap_sq;
    axpy(alpha, p, res.x);
    axpy(-alpha, ap, r);
    r_norm = norm2(r);
    res.iterations = it + 1;
    res.residual_history.push_back(r_norm);
    if (!std::isfinite(r_norm) || !finite(res.x))
      fail(ErrorCode::kNonFiniteEncountered, "cg iterate at step " + std::to_string(it + 1));
    if (r_norm <= target) {
      res.converged = true;
      return res;
    }
    op.apply(r, ar);
    const double r_ar_next = dot(r, ar);
    const double beta = r_ar_next / r_ar;
    r_ar = r_ar_next;
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = r[i] + beta * p[i];
      ap[i] = ar[i] + beta * ap[i];
    }
  }
  res.converged = r_norm <= target;
  return res;
}

}  // namespace trmf
