#include "redchain/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "redchain/closed_form.hpp"

namespace redchain {

namespace {

std::string pair_label(int i, int j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

ModelParams prescribed_params(int n, double lambda, double alpha, double tl, double tr,
                              double gamma = 1.0) {
  ModelParams p;
  p.n_sites = n;
  p.lambda = lambda;
  p.t_left = tl;
  p.t_right = tr;
  p.l2 = tl * tl;  // placeholder moments so the prescription call validates
  p.r2 = tr * tr;
  const BoundaryMoments bm = second_moment_prescription(p, alpha);
  p.l2 = bm.l2;
  p.r2 = bm.r2;
  p.gamma_left = gamma;
  p.gamma_right = gamma;
  return p;
}

}  // namespace

MultilinearFit fit_multilinear(const MomentMatrix& m) {
  const int n = m.n;
  if (n < 5)
    throw std::invalid_argument("fit_multilinear: rank-deficient design, need N >= 5");

  const int n_off = n * (n - 1) / 2;
  DenseMatrix design_off(static_cast<std::size_t>(n_off), 4);
  std::vector<double> target_off(static_cast<std::size_t>(n_off));
  int row = 0;
  for (int i = 1; i < n; ++i) {
    for (int j = i + 1; j <= n; ++j, ++row) {
      design_off(row, 0) = 1.0;
      design_off(row, 1) = i;
      design_off(row, 2) = j;
      design_off(row, 3) = static_cast<double>(i) * j;
      target_off[static_cast<std::size_t>(row)] = m.at(i, j);
    }
  }
  const std::vector<double> off = solve_least_squares(design_off, target_off);

  DenseMatrix design_diag(static_cast<std::size_t>(n), 3);
  std::vector<double> target_diag(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    design_diag(i - 1, 0) = 1.0;
    design_diag(i - 1, 1) = i;
    design_diag(i - 1, 2) = static_cast<double>(i) * i;
    target_diag[static_cast<std::size_t>(i - 1)] = m.at(i, i);
  }
  const std::vector<double> diag = solve_least_squares(design_diag, target_diag);

  MultilinearFit fit;
  fit.a = off[0];
  fit.b = off[1];
  fit.c = off[2];
  fit.d = off[3];
  fit.e = diag[0];
  fit.f = diag[1];
  fit.g = diag[2];

  double sq_sum = 0.0;
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j <= n; ++j) {
      const double predicted =
          (i == j) ? fit.e + fit.f * i + fit.g * static_cast<double>(i) * i
                   : fit.a + fit.b * i + fit.c * j + fit.d * static_cast<double>(i) * j;
      const double dev = std::abs(m.at(i, j) - predicted);
      sq_sum += dev * dev;
      if (i == j)
        fit.residual_diag = std::max(fit.residual_diag, dev);
      else
        fit.residual_offdiag = std::max(fit.residual_offdiag, dev);
    }
  }
  fit.rms_residual = std::sqrt(sq_sum / (n * (n + 1) / 2));
  return fit;
}

double moment_scale(const MomentMatrix& m) {
  double scale = 1.0;
  for (const double v : m.mu) scale = std::max(scale, std::abs(v));
  return scale;
}

bool Report::all_passed() const {
  return std::all_of(items.begin(), items.end(), [](const CheckResult& r) { return r.passed; });
}

int Report::failures() const {
  return static_cast<int>(
      std::count_if(items.begin(), items.end(), [](const CheckResult& r) { return !r.passed; }));
}

Report compare(const MomentMatrix& a, const MomentMatrix& b, double rel_tol) {
  if (a.n != b.n) throw std::invalid_argument("compare: shape mismatch");

  double worst = 0.0;
  int worst_i = 1, worst_j = 1;
  for (int i = 1; i <= a.n; ++i) {
    for (int j = i; j <= a.n; ++j) {
      const double va = a.at(i, j);
      const double vb = b.at(i, j);
      const double err = std::abs(va - vb) / std::max({1.0, std::abs(va), std::abs(vb)});
      if (err > worst) {
        worst = err;
        worst_i = i;
        worst_j = j;
      }
    }
  }

  Report report;
  CheckResult res;
  res.name = "moments-entrywise";
  res.passed = worst <= rel_tol;
  res.value = worst;
  res.threshold = rel_tol;
  res.detail = "worst offender " + pair_label(worst_i, worst_j);
  report.items.push_back(std::move(res));
  return report;
}

Report compare(const SimulationResult& sim, const MomentMatrix& exact, double k_sigma) {
  if (sim.n != exact.n) throw std::invalid_argument("compare: shape mismatch");

  double worst = 0.0;
  int worst_i = 1, worst_j = 1;
  for (int i = 1; i <= sim.n; ++i) {
    for (int j = i; j <= sim.n; ++j) {
      const MomentEstimate& est = sim.moment(i, j);
      const double se = std::max(est.std_error, 1e-300);
      const double pull = std::abs(est.mean - exact.at(i, j)) / se;
      if (pull > worst) {
        worst = pull;
        worst_i = i;
        worst_j = j;
      }
    }
  }

  Report report;
  CheckResult res;
  res.name = "moments-within-error-bars";
  res.passed = worst <= k_sigma;
  res.value = worst;
  res.threshold = k_sigma;
  res.detail = "worst offender " + pair_label(worst_i, worst_j) + " at " +
               std::to_string(worst) + " sigma";
  report.items.push_back(std::move(res));
  return report;
}

Report remark_suite(const RemarkGrid& grid) {
  Report report;

  const auto add = [&report](const std::string& name, bool passed, double value, double threshold,
                             std::string detail = {}) {
    report.items.push_back({name, passed, value, threshold, std::move(detail)});
  };

  for (const auto& [tl, tr] : grid.temperatures) {
    for (const int n : grid.n_values) {
      // Remark: lambda = 0, alpha = 1/6 reduces the off-diagonal correlations
      // to dT^2/(N+2) * i/(N+1) * (1 - j/(N+1)).
      {
        const double alpha = 1.0 / 6.0;
        const ModelParams p = prescribed_params(n, 0.0, alpha, tl, tr);
        const MomentMatrix m = solve_two_point(p, alpha);
        const CorrelationMatrix corr = correlations(m);
        const double scale = moment_scale(m);
        double worst_solver = 0.0;
        double worst_closed = 0.0;
        for (int i = 0; i <= n + 1; ++i) {
          for (int j = i + 1; j <= n + 1; ++j) {
            const double expected = (tl - tr) * (tl - tr) / (n + 2.0) * (i / (n + 1.0)) *
                                    (1.0 - j / (n + 1.0));
            worst_solver = std::max(worst_solver, std::abs(corr.at(i, j) - expected));
            worst_closed = std::max(worst_closed, std::abs(correlation(p, alpha, i, j) - expected));
          }
        }
        std::ostringstream label;
        label << "uniform-limit-correlations N=" << n << " T=(" << tl << "," << tr << ")";
        add(label.str() + " solver", worst_solver <= 1e-10 * scale, worst_solver, 1e-10 * scale);
        add(label.str() + " closed-form", worst_closed <= 1e-10 * scale, worst_closed,
            1e-10 * scale);
      }

      for (const double lambda : grid.lambdas) {
        for (const double alpha : grid.alphas) {
          const ModelParams p = prescribed_params(n, lambda, alpha, tl, tr);
          const MomentMatrix m = solve_two_point(p, alpha);
          const CorrelationMatrix corr = correlations(m);
          const double scale = moment_scale(m);

          std::ostringstream point;
          point << " N=" << n << " lambda=" << lambda << " alpha=" << alpha << " T=(" << tl << ","
                << tr << ")";

          // Remark: degenerate redistribution (alpha = 1/4) kills all
          // off-diagonal correlations; below 1/4 they are strictly positive
          // when the reservoirs disagree.
          double max_abs = 0.0;
          double min_val = std::numeric_limits<double>::infinity();
          for (int i = 1; i < n; ++i) {
            for (int j = i + 1; j <= n; ++j) {
              max_abs = std::max(max_abs, std::abs(corr.at(i, j)));
              min_val = std::min(min_val, corr.at(i, j));
            }
          }
          if (alpha == 0.25) {
            add("degenerate-alpha-zero-correlations" + point.str(), max_abs <= 1e-12 * scale,
                max_abs, 1e-12 * scale);
          } else if (tl != tr) {
            add("positive-correlations" + point.str(), min_val > 0.0, min_val, 0.0);
          }

          // Remark: non-unit boundary rates break multilinearity unless the
          // reservoirs agree.
          if (n >= 5) {
            ModelParams skewed = p;
            skewed.gamma_left = grid.gamma_off;
            skewed.gamma_right = grid.gamma_off;
            const MomentMatrix ms = solve_two_point(skewed, alpha);
            const MultilinearFit fit = fit_multilinear(ms);
            const double residual = std::max(fit.residual_offdiag, fit.residual_diag);
            const double s = moment_scale(ms);
            if (tl != tr) {
              add("gamma-breaks-multilinearity" + point.str(), residual > kFitFailThreshold * s,
                  residual, kFitFailThreshold * s);
            } else {
              add("gamma-equilibrium-multilinear" + point.str(), residual < kFitPassTol * s,
                  residual, kFitPassTol * s);
            }

            const MultilinearFit unit_fit = fit_multilinear(m);
            const double unit_residual =
                std::max(unit_fit.residual_offdiag, unit_fit.residual_diag);
            add("unit-gamma-multilinear" + point.str(), unit_residual < kFitPassTol * scale,
                unit_residual, kFitPassTol * scale);
          }
        }
      }
    }
  }
  return report;
}

}  // namespace redchain
