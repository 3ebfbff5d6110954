#pragma once

#include <string>
#include <utility>
#include <vector>

#include "redchain/simulate.hpp"
#include "redchain/solver.hpp"

namespace redchain {

// Residual thresholds separating "multilinear" from "not", relative to the
// matrix scale. Frozen from the measured theorem-conditioned residual floor
// (about 1e-13 across the default grid): pass is two orders above a generous
// floor estimate, fail is three orders above pass.
inline constexpr double kFitPassTol = 1e-9;
inline constexpr double kFitFailThreshold = 1e-6;

// Least-squares multilinear fit of a moment matrix; the off-diagonal and
// diagonal families are fitted separately.
struct MultilinearFit {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
  double e = 0.0, f = 0.0, g = 0.0;
  double residual_offdiag = 0.0;  // max |mu_ij - fit|
  double residual_diag = 0.0;
  double rms_residual = 0.0;
};

// Requires N >= 5 so both design matrices are comfortably non-degenerate;
// throws std::invalid_argument below that.
MultilinearFit fit_multilinear(const MomentMatrix& m);

// max(1, max |mu_ij|): the scale residual thresholds are relative to.
double moment_scale(const MomentMatrix& m);

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;      // measured quantity
  double threshold = 0.0;  // bound it was held against
  std::string detail;
};

struct Report {
  std::vector<CheckResult> items;

  bool all_passed() const;
  int failures() const;
};

// Deterministic cross-engine comparison: entrywise moments against
// absolute/relative tolerance, reporting the worst offender.
Report compare(const MomentMatrix& a, const MomentMatrix& b, double rel_tol);

// Statistical comparison: every estimate within k_sigma batch-means standard
// errors of the reference value.
Report compare(const SimulationResult& sim, const MomentMatrix& exact, double k_sigma);

// Grid over which the executable remarks run.
struct RemarkGrid {
  std::vector<int> n_values = {5, 6, 8, 12};
  std::vector<double> lambdas = {0.0, 0.3, 0.7};
  std::vector<double> alphas = {1.0 / 6.0, 0.1, 0.25};
  std::vector<std::pair<double, double>> temperatures = {{1.0, 1.0}, {1.0, 2.0}, {0.0, 4.0}};
  double gamma_off = 2.0;  // boundary rate used for the non-unit-gamma checks
};

// Executable forms of the qualitative claims: the lambda = 0, alpha = 1/6
// correlation reduction, the alpha = 1/4 zero-correlation / alpha < 1/4
// positivity dichotomy, and the non-unit-gamma loss of multilinearity.
Report remark_suite(const RemarkGrid& grid = {});

}  // namespace redchain
