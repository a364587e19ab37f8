#pragma once

#include "trmf/dense.hpp"

namespace trmf {

/// a = u * diag(s) * v^T with singular values in descending order.
/// u is rows x r, v is cols x r, r = min(rows, cols).
struct ThinSvd {
  DenseMatrix u;
  Vector s;
  DenseMatrix v;
};

/// One-sided (Hestenes) Jacobi SVD. Columns of u belonging to zero singular
/// values are left as zero vectors.
ThinSvd thin_svd(const DenseMatrix& a);

}  // namespace trmf
