#pragma once

#include <vector>

#include "redchain/model.hpp"

namespace redchain {

// Stationary one-point function. values[i] for i = 0..N+1, with the ghost
// entries pinned to the reservoir means.
struct Profile {
  std::vector<double> values;

  int n_sites() const { return static_cast<int>(values.size()) - 2; }
  double operator[](int i) const { return values[static_cast<std::size_t>(i)]; }
};

// Affine profile T_L*(1 - i/(N+1)) + T_R*i/(N+1). Only valid for unit
// boundary rates; throws std::invalid_argument when gamma != 1.
Profile profile_closed_form(const ModelParams& p);

// Solves the N x N tridiagonal stationarity system, with the boundary rows
// weighted by gamma_left/gamma_right. Matches the closed form at gamma = 1.
Profile profile_solve(const ModelParams& p);

// max_i of the stationarity row residual evaluated on a profile; used to
// certify solves.
double profile_residual(const ModelParams& p, const Profile& profile);

}  // namespace redchain
