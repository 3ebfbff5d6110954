#pragma once

#include "redchain/model.hpp"

namespace redchain {

// Multilinear coefficients of the stationary two-point function:
// mu_ij = a + b*i + c*j + d*i*j off the diagonal, mu_ii = e + f*i + g*i*i
// on it. denom_s and denom_d are the shared factors
// S = lambda + 2*alpha*(1-lambda) and D = 1 + N*lambda + 2*(N-1)*(1-lambda)*alpha.
struct ClosedFormCoefficients {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
  double e = 0.0, f = 0.0, g = 0.0;
  double denom_s = 0.0;
  double denom_d = 0.0;
};

// Reservoir second moments required for multilinearity.
struct BoundaryMoments {
  double l2 = 0.0;
  double r2 = 0.0;
};

// Shared factor S = lambda + 2*alpha*(1-lambda); positive for admissible inputs.
double shared_factor_s(double alpha, double lambda);

// Shared factor D = 1 + N*lambda + 2*(N-1)*(1-lambda)*alpha.
double shared_factor_d(int n_sites, double alpha, double lambda);

// Evaluates all seven ansatz coefficients. Requires unit boundary rates.
ClosedFormCoefficients theorem_coefficients(const ModelParams& p, double alpha);

// The second-moment prescription under which the two-point function is
// multilinear. Both returned values dominate the squared reservoir means.
BoundaryMoments second_moment_prescription(const ModelParams& p, double alpha);

// Two-point correlation for 0 <= i <= j <= N+1, evaluated at the prescribed
// reservoir second moments. Mixed ghost pairs are 0 by convention; the ghost
// diagonals carry the prescribed reservoir variances. Requires unit boundary
// rates; throws std::out_of_range for bad indices.
double correlation(const ModelParams& p, double alpha, int i, int j);

// Evaluates the ansatz polynomial for 1 <= i <= j <= N (diagonal branch at
// i = j). Throws std::out_of_range for bad indices.
double moment_from_ansatz(const ClosedFormCoefficients& coeffs, int n_sites, int i, int j);

}  // namespace redchain
