#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "trmf/dense.hpp"

namespace trmf {

/// Matrix-free square operator. `apply(in, out)` writes op(in) into `out`;
/// symmetry and definiteness are the caller's contract.
struct LinearOperator {
  std::size_t dim = 0;
  std::function<void(std::span<const double>, std::span<double>)> apply;
};

/// Lower-triangular Cholesky factor of a symmetric positive-definite matrix.
/// Throws NotSPD on a non-positive pivot and on asymmetry beyond 1e-10
/// (relative to the largest entry).
DenseMatrix cholesky_factor(const DenseMatrix& a);

/// Solves L L^T x = b given the factor from cholesky_factor.
Vector cholesky_substitute(const DenseMatrix& lower, std::span<const double> b);

Vector cholesky_solve(const DenseMatrix& a, std::span<const double> b);

struct CgResult {
  Vector x;
  std::size_t iterations = 0;
  bool converged = false;
  /// Residual 2-norm at the start and after every iteration.
  std::vector<double> residual_history;
};

/// Krylov solve of op(x) = b for SPD `op`, starting from x0.
///
/// Uses the conjugate-residual form of the CG recurrence (conjugacy in the
/// op-inner product), which costs one operator application per iteration
/// like plain CG but keeps the residual norm monotone. Stops once
/// ||op(x) - b|| <= tol * ||b|| or after max_iter iterations.
CgResult conjugate_gradient(const LinearOperator& op, std::span<const double> b,
                            std::span<const double> x0, double tol, std::size_t max_iter);

}  // namespace trmf
