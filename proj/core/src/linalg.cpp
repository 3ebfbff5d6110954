#include "redchain/linalg.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace redchain {

std::vector<double> solve_dense(DenseMatrix a, std::vector<double> b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw std::invalid_argument("solve_dense: shape mismatch");

  // Scale for the singularity test: largest entry of the original matrix.
  double scale = 0.0;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) scale = std::max(scale, std::abs(a(r, c)));
  const double tiny = 1e-300 + scale * 1e-14;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    double best = std::abs(a(k, k));
    for (std::size_t r = k + 1; r < n; ++r) {
      const double v = std::abs(a(r, k));
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best < tiny) throw std::runtime_error("solve_dense: singular matrix");
    if (pivot != k) {
      for (std::size_t c = k; c < n; ++c) std::swap(a(k, c), a(pivot, c));
      std::swap(b[k], b[pivot]);
    }
    const double inv_pivot = 1.0 / a(k, k);
    for (std::size_t r = k + 1; r < n; ++r) {
      const double factor = a(r, k) * inv_pivot;
      if (factor == 0.0) continue;
      a(r, k) = 0.0;
      for (std::size_t c = k + 1; c < n; ++c) a(r, c) -= factor * a(k, c);
      b[r] -= factor * b[k];
    }
  }

  std::vector<double> x(n, 0.0);
  for (std::size_t ri = n; ri-- > 0;) {
    double acc = b[ri];
    for (std::size_t c = ri + 1; c < n; ++c) acc -= a(ri, c) * x[c];
    x[ri] = acc / a(ri, ri);
  }
  return x;
}

std::vector<double> solve_tridiagonal(std::vector<double> sub, std::vector<double> diag,
                                      std::vector<double> super, std::vector<double> rhs) {
  const std::size_t n = diag.size();
  if (sub.size() != n || super.size() != n || rhs.size() != n)
    throw std::invalid_argument("solve_tridiagonal: shape mismatch");

  for (std::size_t i = 1; i < n; ++i) {
    if (diag[i - 1] == 0.0) throw std::runtime_error("solve_tridiagonal: zero pivot");
    const double w = sub[i] / diag[i - 1];
    diag[i] -= w * super[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  if (diag[n - 1] == 0.0) throw std::runtime_error("solve_tridiagonal: zero pivot");

  std::vector<double> x(n);
  x[n - 1] = rhs[n - 1] / diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = (rhs[i] - super[i] * x[i + 1]) / diag[i];
  return x;
}

std::vector<double> solve_least_squares(const DenseMatrix& a, std::span<const double> b) {
  const std::size_t m = a.rows();
  const std::size_t p = a.cols();
  if (b.size() != m) throw std::invalid_argument("solve_least_squares: shape mismatch");

  DenseMatrix ata(p, p);
  std::vector<double> atb(p, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t i = 0; i < p; ++i) {
      atb[i] += a(r, i) * b[r];
      for (std::size_t j = 0; j < p; ++j) ata(i, j) += a(r, i) * a(r, j);
    }
  }
  return solve_dense(std::move(ata), std::move(atb));
}

double max_residual(const DenseMatrix& a, std::span<const double> x, std::span<const double> b) {
  double worst = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    double acc = -b[r];
    for (std::size_t c = 0; c < a.cols(); ++c) acc += a(r, c) * x[c];
    worst = std::max(worst, std::abs(acc));
  }
  return worst;
}

}  // namespace redchain
