#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace redchain {

using RngStream = std::mt19937_64;

// Full parameter set of the boundary-driven redistribution chain: N sites,
// retention fraction lambda, reservoir means and second moments, and the
// boundary rate factors. Immutable once validated.
struct ModelParams {
  int n_sites = 0;          // N >= 3
  double lambda = 0.0;      // retention fraction, 0 <= lambda < 1
  double t_left = 0.0;      // left reservoir mean
  double t_right = 0.0;     // right reservoir mean
  double l2 = 0.0;          // left reservoir second moment
  double r2 = 0.0;          // right reservoir second moment
  double gamma_left = 1.0;  // boundary rate factors, > 0
  double gamma_right = 1.0;
};

// Returns p unchanged if every invariant holds, otherwise throws
// std::invalid_argument naming the first violated invariant.
ModelParams validate_params(const ModelParams& p);

// Law of the redistribution fraction: supported on [0,1], symmetric about
// 1/2, mean 1/2. alpha() is E[eps*(1-eps)], computed in closed form at
// construction.
class RedistributionLaw {
public:
  enum class Kind { Uniform, DeltaHalf, BetaSymmetric, TwoAtomSymmetric };

  static RedistributionLaw uniform();
  static RedistributionLaw delta_half();
  static RedistributionLaw beta_symmetric(double k);         // Beta(k, k), k > 0
  static RedistributionLaw two_atom_symmetric(double p);     // atoms at p, 1-p; p in (0, 1/2)

  // Parses "uniform", "delta-half", "beta:K", "two-atom:P".
  static RedistributionLaw parse(const std::string& spec);

  Kind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  double param() const { return param_; }
  std::string name() const;

  double sample(RngStream& rng) const;

private:
  RedistributionLaw(Kind kind, double param, double alpha)
      : kind_(kind), param_(param), alpha_(alpha) {}

  Kind kind_;
  double param_;
  double alpha_;
};

// Sampleable nonnegative law with prescribed first and second moments.
// The deterministic kind is the unique zero-variance member; gamma covers
// any positive-variance pair with positive mean; two-atom puts equal weight
// on mean +/- sqrt(variance) and requires mean >= sqrt(variance).
class ReservoirLaw {
public:
  enum class Kind { Deterministic, Gamma, TwoAtom };

  static ReservoirLaw deterministic(double value);
  static ReservoirLaw gamma_law(double mean, double second_moment);
  static ReservoirLaw two_atom(double mean, double second_moment);

  // Builds the named kind from (mean, second moment); kind names are
  // "deterministic", "gamma", "two-atom".
  static ReservoirLaw from_moments(const std::string& kind, double mean, double second_moment);

  Kind kind() const { return kind_; }
  double mean() const { return mean_; }
  double second_moment() const { return second_moment_; }
  double variance() const { return second_moment_ - mean_ * mean_; }
  std::string name() const;

  double sample(RngStream& rng) const;

private:
  ReservoirLaw(Kind kind, double mean, double second_moment)
      : kind_(kind), mean_(mean), second_moment_(second_moment) {}

  Kind kind_;
  double mean_;
  double second_moment_;
};

// The three coefficients the generator produces when acting on pair
// functions x_i*x_j (diagonal weight, cross weight, adjacent-pair weight).
struct GeneratorCoefficients {
  double a_coef = 0.0;  // (1/2 - alpha)(1 - lambda)
  double b_coef = 0.0;  // 1 - 2*alpha*(1 - lambda)
  double c_coef = 0.0;  // lambda/2 + alpha*(1 - lambda)
};

// Requires 0 < alpha <= 1/4 and 0 <= lambda < 1; throws std::domain_error
// otherwise.
GeneratorCoefficients coefficients(double alpha, double lambda);

}  // namespace redchain
