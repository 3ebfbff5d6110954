#include "redchain/solver.hpp"

#include <cmath>
#include <stdexcept>

namespace redchain {

int MomentMatrix::index_of(int n, int i, int j) {
  if (!(1 <= i && i <= j && j <= n)) throw std::out_of_range("MomentMatrix: index out of range");
  // Row-major packed upper triangle: pairs (i, i), (i, i+1), ..., (i, N).
  const int row = i - 1;
  return row * n - row * (row - 1) / 2 + (j - i);
}

std::pair<int, int> MomentMatrix::pair_of(int n, int idx) {
  int i = 1;
  while (idx >= n - i + 1) {
    idx -= n - i + 1;
    ++i;
  }
  return {i, i + idx};
}

double MomentMatrix::at(int i, int j) const {
  if (i > j) std::swap(i, j);
  return mu[static_cast<std::size_t>(index_of(n, i, j))];
}

double& MomentMatrix::at(int i, int j) {
  if (i > j) std::swap(i, j);
  return mu[static_cast<std::size_t>(index_of(n, i, j))];
}

int CorrelationMatrix::index_of(int n, int i, int j) {
  if (!(0 <= i && i <= j && j <= n + 1))
    throw std::out_of_range("CorrelationMatrix: index out of range");
  const int size = n + 2;  // indices 0..N+1
  return i * size - i * (i - 1) / 2 + (j - i);
}

double CorrelationMatrix::at(int i, int j) const {
  if (i > j) std::swap(i, j);
  return c[static_cast<std::size_t>(index_of(n, i, j))];
}

double& CorrelationMatrix::at(int i, int j) {
  if (i > j) std::swap(i, j);
  return c[static_cast<std::size_t>(index_of(n, i, j))];
}

namespace {

// Accumulates one stationarity row. Ghost-pair moments are turned into
// right-hand-side constants via the profile and the reservoir moments.
class RowBuilder {
public:
  RowBuilder(LinearSystem& sys, const ModelParams& p, const Profile& profile, int row)
      : sys_(sys), p_(p), profile_(profile), row_(row) {}

  void add(int i, int j, double coef) {
    const int n = sys_.n;
    if (i > j) std::swap(i, j);
    if (i >= 1 && j <= n) {
      sys_.matrix(static_cast<std::size_t>(row_), static_cast<std::size_t>(sys_.index_of(i, j))) +=
          coef;
      return;
    }
    // Ghost sites are resampled fresh at each boundary event, so they enter
    // only through reservoir moments.
    double constant = 0.0;
    if (i == 0 && j == 0)
      constant = p_.l2;
    else if (i == 0)
      constant = p_.t_left * profile_[j];
    else if (j == n + 1 && i == n + 1)
      constant = p_.r2;
    else
      constant = p_.t_right * profile_[i];
    sys_.rhs[static_cast<std::size_t>(row_)] -= coef * constant;
  }

private:
  LinearSystem& sys_;
  const ModelParams& p_;
  const Profile& profile_;
  int row_;
};

}  // namespace

LinearSystem build_system(const ModelParams& p_in, double alpha, const Profile& profile) {
  const ModelParams p = validate_params(p_in);
  const GeneratorCoefficients gc = coefficients(alpha, p.lambda);
  const int n = p.n_sites;
  if (profile.n_sites() != n) throw std::invalid_argument("build_system: profile size mismatch");

  LinearSystem sys;
  sys.n = n;
  sys.m = n * (n + 1) / 2;
  sys.matrix = DenseMatrix(static_cast<std::size_t>(sys.m), static_cast<std::size_t>(sys.m));
  sys.rhs.assign(static_cast<std::size_t>(sys.m), 0.0);

  // Edges k = 0..N connect sites (k, k+1); 0 and N+1 are the ghost sites.
  const auto edge_rate = [&](int k) {
    if (k == 0) return p.gamma_left;
    if (k == n) return p.gamma_right;
    return 1.0;
  };

  for (int row = 0; row < sys.m; ++row) {
    const auto [i, j] = sys.pair_of(row);
    RowBuilder rb(sys, p, profile, row);
    for (int k = 0; k <= n; ++k) {
      const int lo = k, hi = k + 1;
      const bool touches_i = (lo == i || hi == i);
      const bool touches_j = (lo == j || hi == j);
      if (!touches_i && !touches_j) continue;
      const double rate = edge_rate(k);

      if (i == j) {
        // Diagonal pair: the edge redistributes site i with neighbor m.
        const int m = (lo == i) ? hi : lo;
        rb.add(i, i, rate * (gc.a_coef - 1.0));
        rb.add(i, m, rate * gc.b_coef);
        rb.add(m, m, rate * gc.a_coef);
      } else if (touches_i && touches_j) {
        // The edge is exactly the adjacent pair (i, j).
        rb.add(i, i, rate * gc.c_coef);
        rb.add(j, j, rate * gc.c_coef);
        rb.add(i, j, -rate * gc.b_coef);
      } else {
        // The edge moves one member of the pair towards its neighbor m.
        const int touched = touches_i ? i : j;
        const int other = touches_i ? j : i;
        const int m = (lo == touched) ? hi : lo;
        rb.add(m, other, 0.5 * rate);
        rb.add(i, j, -0.5 * rate);
      }
    }
  }
  return sys;
}

MomentMatrix solve_two_point(const ModelParams& p_in, double alpha) {
  const ModelParams p = validate_params(p_in);

  MomentMatrix out;
  out.n = p.n_sites;
  out.params = p;
  out.alpha = alpha;
  out.l2 = p.l2;
  out.r2 = p.r2;
  out.profile = profile_solve(p);

  LinearSystem sys = build_system(p, alpha, out.profile);
  try {
    out.mu = solve_dense(sys.matrix, sys.rhs);
  } catch (const std::runtime_error&) {
    throw std::runtime_error("solve_two_point: singular moment system (N=" +
                             std::to_string(p.n_sites) + ", lambda=" + std::to_string(p.lambda) +
                             ", alpha=" + std::to_string(alpha) + ")");
  }

  const double scale = std::max({1.0, p.l2, p.r2, p.t_left * p.t_right});
  if (system_residual(sys, out) >= 1e-10 * scale)
    throw std::runtime_error("solve_two_point: residual check failed");
  return out;
}

double system_residual(const LinearSystem& sys, const MomentMatrix& m) {
  return max_residual(sys.matrix, m.mu, sys.rhs);
}

CorrelationMatrix correlations(const MomentMatrix& m) {
  const int n = m.n;
  CorrelationMatrix out;
  out.n = n;
  out.c.assign(static_cast<std::size_t>((n + 2) * (n + 3) / 2), 0.0);

  out.at(0, 0) = m.l2 - m.params.t_left * m.params.t_left;
  out.at(n + 1, n + 1) = m.r2 - m.params.t_right * m.params.t_right;
  // Mixed ghost pairs stay 0 by convention.
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) out.at(i, j) = m.at(i, j) - m.profile[i] * m.profile[j];
  return out;
}

}  // namespace redchain
