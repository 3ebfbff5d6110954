#include "redchain/profile.hpp"

#include <cmath>
#include <stdexcept>

#include "redchain/linalg.hpp"

namespace redchain {

Profile profile_closed_form(const ModelParams& p_in) {
  const ModelParams p = validate_params(p_in);
  if (p.gamma_left != 1.0 || p.gamma_right != 1.0)
    throw std::invalid_argument("profile_closed_form requires gamma_left = gamma_right = 1");

  const int n = p.n_sites;
  Profile out;
  out.values.resize(static_cast<std::size_t>(n) + 2);
  for (int i = 0; i <= n + 1; ++i) {
    const double frac = static_cast<double>(i) / (n + 1);
    out.values[static_cast<std::size_t>(i)] = p.t_left * (1.0 - frac) + p.t_right * frac;
  }
  return out;
}

Profile profile_solve(const ModelParams& p_in) {
  const ModelParams p = validate_params(p_in);
  const int n = p.n_sites;

  // Row i: sum over edges at site i of rate * (E(neighbor) - E(i)) = 0,
  // with E(0) = T_L and E(N+1) = T_R moved to the right-hand side.
  std::vector<double> sub(n, 0.0), diag(n, 0.0), super(n, 0.0), rhs(n, 0.0);
  for (int i = 1; i <= n; ++i) {
    const int r = i - 1;
    const double left_rate = (i == 1) ? p.gamma_left : 1.0;
    const double right_rate = (i == n) ? p.gamma_right : 1.0;
    diag[r] = -(left_rate + right_rate);
    if (i == 1)
      rhs[r] -= left_rate * p.t_left;
    else
      sub[r] = left_rate;
    if (i == n)
      rhs[r] -= right_rate * p.t_right;
    else
      super[r] = right_rate;
  }

  const std::vector<double> interior = solve_tridiagonal(sub, diag, super, rhs);

  Profile out;
  out.values.resize(static_cast<std::size_t>(n) + 2);
  out.values.front() = p.t_left;
  out.values.back() = p.t_right;
  for (int i = 1; i <= n; ++i) out.values[static_cast<std::size_t>(i)] = interior[static_cast<std::size_t>(i - 1)];

  const double tol = 1e-12 * std::max({p.t_left, p.t_right, 1.0});
  if (profile_residual(p, out) >= tol)
    throw std::runtime_error("profile_solve: residual check failed");
  return out;
}

double profile_residual(const ModelParams& p, const Profile& profile) {
  const int n = p.n_sites;
  double worst = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double left_rate = (i == 1) ? p.gamma_left : 1.0;
    const double right_rate = (i == n) ? p.gamma_right : 1.0;
    const double row = left_rate * (profile[i - 1] - profile[i]) +
                       right_rate * (profile[i + 1] - profile[i]);
    worst = std::max(worst, std::abs(row));
  }
  return worst;
}

}  // namespace redchain
