#pragma once

#include <utility>
#include <vector>

#include "redchain/linalg.hpp"
#include "redchain/model.hpp"
#include "redchain/profile.hpp"

namespace redchain {

// Stationary two-point values mu_ij for 1 <= i <= j <= N, stored as a packed
// upper triangle, together with the profile and inputs that produced them.
struct MomentMatrix {
  int n = 0;
  std::vector<double> mu;  // packed, see index_of
  Profile profile;
  double l2 = 0.0;
  double r2 = 0.0;
  ModelParams params;
  double alpha = 0.0;

  // Packed index of the unordered pair (i, j), 1-based, i <= j.
  static int index_of(int n, int i, int j);
  static std::pair<int, int> pair_of(int n, int idx);

  double at(int i, int j) const;  // symmetric access, 1 <= i, j <= N
  double& at(int i, int j);
};

// Two-point correlations C(i, j) for 0 <= i <= j <= N+1, including the ghost
// conventions (mixed ghost pairs are 0; ghost diagonals carry reservoir
// variances).
struct CorrelationMatrix {
  int n = 0;
  std::vector<double> c;  // packed over 0..N+1

  static int index_of(int n, int i, int j);
  double at(int i, int j) const;
  double& at(int i, int j);
};

// One stationarity equation per unordered pair: a square M x M system with
// M = N(N+1)/2.
struct LinearSystem {
  int n = 0;
  int m = 0;
  DenseMatrix matrix;
  std::vector<double> rhs;

  int index_of(int i, int j) const { return MomentMatrix::index_of(n, i, j); }
  std::pair<int, int> pair_of(int idx) const { return MomentMatrix::pair_of(n, idx); }
};

// Assembles the stationarity row for every pair (i, j) by applying the
// generator per edge to x_i*x_j and taking stationary expectations. Ghost
// moments are moved to the right-hand side via mu_{0,j} -> T_L*E(j),
// mu_{i,N+1} -> T_R*E(i) and the reservoir second moments; boundary edges
// carry their gamma rate factors. Rows are scaled by 1/(1-lambda).
LinearSystem build_system(const ModelParams& p, double alpha, const Profile& profile);

// Dense direct solve of build_system, with a post-solve residual check of
// every row against 1e-10 * max(1, L^2, R^2, T_L*T_R). Throws
// std::runtime_error on a singular system or residual failure.
MomentMatrix solve_two_point(const ModelParams& p, double alpha);

// max row residual of the assembled system evaluated at m.mu.
double system_residual(const LinearSystem& sys, const MomentMatrix& m);

// Subtracts the profile outer product and fills the ghost rows/columns.
CorrelationMatrix correlations(const MomentMatrix& m);

}  // namespace redchain
