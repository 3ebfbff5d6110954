#include "redchain/closed_form.hpp"

#include <cmath>
#include <stdexcept>

namespace redchain {

namespace {

void check_theorem_inputs(const ModelParams& p, double alpha) {
  validate_params(p);
  if (!(alpha > 0.0 && alpha <= 0.25)) throw std::domain_error("alpha out of range (0, 1/4]");
}

void check_unit_gamma(const ModelParams& p, const char* what) {
  if (p.gamma_left != 1.0 || p.gamma_right != 1.0)
    throw std::invalid_argument(std::string(what) + " requires gamma_left = gamma_right = 1");
}

}  // namespace

double shared_factor_s(double alpha, double lambda) {
  return lambda + 2.0 * alpha * (1.0 - lambda);
}

double shared_factor_d(int n_sites, double alpha, double lambda) {
  return 1.0 + n_sites * lambda + 2.0 * (n_sites - 1) * (1.0 - lambda) * alpha;
}

ClosedFormCoefficients theorem_coefficients(const ModelParams& p, double alpha) {
  check_theorem_inputs(p, alpha);
  check_unit_gamma(p, "theorem_coefficients");

  const double lambda = p.lambda;
  const double tl = p.t_left;
  const double tr = p.t_right;
  const double diff = tl - tr;  // temperature difference enters as a primitive
  const int n = p.n_sites;
  const double np1 = n + 1.0;
  const double s = shared_factor_s(alpha, lambda);
  const double d_fac = shared_factor_d(n, alpha, lambda);
  const double one_m_l = 1.0 - lambda;
  const double b_coef = 1.0 - 2.0 * alpha * one_m_l;
  const double one_m_4a = 1.0 - 4.0 * alpha;

  ClosedFormCoefficients out;
  out.denom_s = s;
  out.denom_d = d_fac;
  out.a = tl * tl;
  out.b = -diff * (np1 * s * tl + one_m_l * one_m_4a * tr) / (np1 * d_fac);
  out.c = -diff * tl / np1;
  out.d = s * diff * diff / (np1 * d_fac);
  out.f = -b_coef * diff * ((1.0 + (2.0 * n + 1.0) * lambda + 4.0 * n * alpha * one_m_l) * tl +
                            one_m_4a * one_m_l * tr) /
          (np1 * d_fac * s);
  out.g = b_coef * diff * diff / (np1 * d_fac);
  // The diagonal constant term, reconstructed from the diagonal correlation
  // plus the squared profile at i = 0.
  out.e = tl * tl + one_m_4a * one_m_l * tl * tl / s +
          alpha * b_coef * one_m_l * diff * diff / (s * d_fac * np1);
  return out;
}

BoundaryMoments second_moment_prescription(const ModelParams& p, double alpha) {
  check_theorem_inputs(p, alpha);

  const double lambda = p.lambda;
  const double diff = p.t_left - p.t_right;
  const double s = shared_factor_s(alpha, lambda);
  const double d_fac = shared_factor_d(p.n_sites, alpha, lambda);
  const double b_coef = 1.0 - 2.0 * alpha * (1.0 - lambda);
  const double ratio = b_coef / s;
  const double correction =
      alpha * (1.0 - lambda) * b_coef * diff * diff / ((p.n_sites + 1.0) * d_fac * s);

  BoundaryMoments out;
  out.l2 = ratio * p.t_left * p.t_left + correction;
  out.r2 = ratio * p.t_right * p.t_right + correction;
  return out;
}

double correlation(const ModelParams& p, double alpha, int i, int j) {
  check_theorem_inputs(p, alpha);
  check_unit_gamma(p, "correlation");
  const int n = p.n_sites;
  if (!(0 <= i && i <= j && j <= n + 1)) throw std::out_of_range("correlation: index out of range");

  const double lambda = p.lambda;
  const double tl = p.t_left;
  const double tr = p.t_right;
  const double diff = tl - tr;
  const double np1 = n + 1.0;
  const double s = shared_factor_s(alpha, lambda);
  const double d_fac = shared_factor_d(n, alpha, lambda);
  const double one_m_l = 1.0 - lambda;
  const double one_m_4a = 1.0 - 4.0 * alpha;
  const double b_coef = 1.0 - 2.0 * alpha * one_m_l;

  if (i == 0 && j == 0) {
    const BoundaryMoments bm = second_moment_prescription(p, alpha);
    return bm.l2 - tl * tl;
  }
  if (i == n + 1 && j == n + 1) {
    const BoundaryMoments bm = second_moment_prescription(p, alpha);
    return bm.r2 - tr * tr;
  }
  if (i < j) {
    if (i == 0 || j == n + 1) return 0.0;  // mixed ghost pairs vanish by convention
    const double prefactor = one_m_4a * one_m_l * diff * diff / d_fac;
    return prefactor * (i / np1) * (1.0 - j / np1);
  }

  // Diagonal branch, 1 <= i = j <= N.
  const double term0 = one_m_4a * one_m_l * tl * tl / s +
                       alpha * b_coef * one_m_l * diff * diff / (s * d_fac * np1);
  const double lin = -one_m_4a * one_m_l * diff *
                     ((1.0 + 2.0 * lambda * n + 2.0 * alpha * (2.0 * n - 1.0) * one_m_l) * tl +
                      b_coef * tr) /
                     (s * d_fac);
  const double quad = one_m_4a * one_m_l * diff * diff * n / d_fac;
  return term0 + lin * (i / np1) + quad * (i / np1) * (i / np1);
}

double moment_from_ansatz(const ClosedFormCoefficients& coeffs, int n_sites, int i, int j) {
  if (!(1 <= i && i <= j && j <= n_sites))
    throw std::out_of_range("moment_from_ansatz: index out of range");
  if (i == j) return coeffs.e + coeffs.f * i + coeffs.g * static_cast<double>(i) * i;
  return coeffs.a + coeffs.b * i + coeffs.c * j + coeffs.d * static_cast<double>(i) * j;
}

}  // namespace redchain
