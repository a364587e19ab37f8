#include "trmf/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace trmf {

namespace {

constexpr int kMaxSweeps = 60;

// Orthogonalizes the rows of `w` (q rows, each of length p) in place and
// accumulates the rotations into `v` (q x q, rows are the right vectors).
void jacobi_rows(DenseMatrix& w, DenseMatrix& v) {
  const std::size_t q = w.rows();
  const double eps = 1e-15;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t i = 0; i + 1 < q; ++i) {
      for (std::size_t j = i + 1; j < q; ++j) {
        auto wi = w.row(i);
        auto wj = w.row(j);
        const double alpha = dot(wi, wi);
        const double beta = dot(wj, wj);
        const double gamma = dot(wi, wj);
        if (std::abs(gamma) <= eps * std::sqrt(alpha * beta) || gamma == 0.0) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t k = 0; k < wi.size(); ++k) {
          const double a = wi[k];
          const double b = wj[k];
          wi[k] = c * a - s * b;
          wj[k] = s * a + c * b;
        }
        auto vi = v.row(i);
        auto vj = v.row(j);
        for (std::size_t k = 0; k < vi.size(); ++k) {
          const double a = vi[k];
          const double b = vj[k];
          vi[k] = c * a - s * b;
          vj[k] = s * a + c * b;
        }
      }
    }
    if (!rotated) break;
  }
}

}  // namespace

ThinSvd thin_svd(const DenseMatrix& a) {
  const bool tall = a.rows() >= a.cols();
  // Work on the matrix whose columns are the shorter side; store them as rows.
  DenseMatrix w = tall ? a.transpose() : a;  // q x p
  const std::size_t q = w.rows();
  const std::size_t p = w.cols();
  DenseMatrix v = DenseMatrix::identity(q);
  jacobi_rows(w, v);

  std::vector<double> norms(q);
  for (std::size_t i = 0; i < q; ++i) norms[i] = norm2(w.row(i));
  std::vector<std::size_t> order(q);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

  // For the working matrix M (p x q): M V = U S, so M = U S V^T.
  DenseMatrix left(p, q);
  DenseMatrix right(q, q);
  Vector s(q);
  for (std::size_t c = 0; c < q; ++c) {
    const std::size_t src = order[c];
    s[c] = norms[src];
    if (norms[src] > 0.0)
      for (std::size_t k = 0; k < p; ++k) left(k, c) = w(src, k) / norms[src];
    for (std::size_t k = 0; k < q; ++k) right(k, c) = v(src, k);
  }

  ThinSvd out;
  out.s = std::move(s);
  if (tall) {
    // Rows of w were the columns of a, so M = a.
    out.u = std::move(left);
    out.v = std::move(right);
  } else {
    // M = a^T.
    out.u = std::move(right);
    out.v = std::move(left);
  }
  return out;
}

}  // namespace trmf
