#include "redchain/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace redchain {

ModelParams validate_params(const ModelParams& p) {
  if (p.n_sites < 3) throw std::invalid_argument("n_sites out of range (need N >= 3)");
  if (!(p.lambda >= 0.0 && p.lambda < 1.0))
    throw std::invalid_argument("lambda out of range");
  if (!(p.t_left >= 0.0)) throw std::invalid_argument("t_left negative");
  if (!(p.t_right >= 0.0)) throw std::invalid_argument("t_right negative");
  // rounding slack: prescribed moments can sit an ulp below the bound
  const auto dominates = [](double m2, double mean) {
    return m2 >= mean * mean * (1.0 - 1e-12);
  };
  if (!dominates(p.l2, p.t_left))
    throw std::invalid_argument("second moment below squared mean");
  if (!dominates(p.r2, p.t_right))
    throw std::invalid_argument("second moment below squared mean");
  if (!(p.gamma_left > 0.0)) throw std::invalid_argument("gamma_left not positive");
  if (!(p.gamma_right > 0.0)) throw std::invalid_argument("gamma_right not positive");
  return p;
}

RedistributionLaw RedistributionLaw::uniform() {
  return {Kind::Uniform, 0.0, 1.0 / 6.0};
}

RedistributionLaw RedistributionLaw::delta_half() {
  return {Kind::DeltaHalf, 0.5, 0.25};
}

RedistributionLaw RedistributionLaw::beta_symmetric(double k) {
  if (!(k > 0.0)) throw std::invalid_argument("beta shape must be positive");
  // E[eps(1-eps)] for Beta(k,k) is k / (2(2k+1)).
  return {Kind::BetaSymmetric, k, k / (2.0 * (2.0 * k + 1.0))};
}

RedistributionLaw RedistributionLaw::two_atom_symmetric(double p) {
  // p = 0 gives alpha = 0 (no transport in the pair moments); p = 1/2 is the
  // delta-half law. Both endpoints are excluded.
  if (!(p > 0.0 && p < 0.5))
    throw std::invalid_argument("two-atom position must lie in (0, 1/2); use delta-half for 1/2");
  return {Kind::TwoAtomSymmetric, p, p * (1.0 - p)};
}

RedistributionLaw RedistributionLaw::parse(const std::string& spec) {
  if (spec == "uniform") return uniform();
  if (spec == "delta-half") return delta_half();
  const auto colon = spec.find(':');
  if (colon != std::string::npos) {
    const std::string head = spec.substr(0, colon);
    const std::string arg = spec.substr(colon + 1);
    try {
      if (head == "beta") return beta_symmetric(std::stod(arg));
      if (head == "two-atom") return two_atom_symmetric(std::stod(arg));
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("bad numeric argument in redistribution law '" + spec + "'");
    }
  }
  throw std::invalid_argument("unknown redistribution law '" + spec + "'");
}

std::string RedistributionLaw::name() const {
  switch (kind_) {
    case Kind::Uniform: return "uniform";
    case Kind::DeltaHalf: return "delta-half";
    case Kind::BetaSymmetric: return "beta:" + std::to_string(param_);
    case Kind::TwoAtomSymmetric: return "two-atom:" + std::to_string(param_);
  }
  return "?";
}

double RedistributionLaw::sample(RngStream& rng) const {
  switch (kind_) {
    case Kind::Uniform:
      return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    case Kind::DeltaHalf:
      return 0.5;
    case Kind::BetaSymmetric: {
      std::gamma_distribution<double> g(param_, 1.0);
      const double x = g(rng);
      const double y = g(rng);
      return x / (x + y);
    }
    case Kind::TwoAtomSymmetric:
      return (rng() & 1u) ? param_ : 1.0 - param_;
  }
  return 0.5;
}

ReservoirLaw ReservoirLaw::deterministic(double value) {
  if (!(value >= 0.0)) throw std::invalid_argument("reservoir value negative");
  return {Kind::Deterministic, value, value * value};
}

ReservoirLaw ReservoirLaw::gamma_law(double mean, double second_moment) {
  const double var = second_moment - mean * mean;
  if (!(mean > 0.0)) throw std::invalid_argument("gamma reservoir needs positive mean");
  if (!(var > 0.0))
    throw std::invalid_argument("gamma reservoir needs positive variance (use deterministic)");
  return {Kind::Gamma, mean, second_moment};
}

ReservoirLaw ReservoirLaw::two_atom(double mean, double second_moment) {
  const double var = second_moment - mean * mean;
  if (!(var > 0.0))
    throw std::invalid_argument("two-atom reservoir needs positive variance (use deterministic)");
  // Up to rounding slack, the lower atom mean - sqrt(var) must stay in
  // [0, inf); the boundary case puts it at exactly 0.
  if (mean < std::sqrt(var) * (1.0 - 1e-12))
    throw std::invalid_argument("two-atom reservoir leaves [0,inf): mean below sqrt(variance)");
  return {Kind::TwoAtom, mean, second_moment};
}

ReservoirLaw ReservoirLaw::from_moments(const std::string& kind, double mean,
                                        double second_moment) {
  if (kind == "deterministic") {
    if (std::abs(second_moment - mean * mean) > 1e-12 * std::max(1.0, mean * mean))
      throw std::invalid_argument("deterministic reservoir requires zero variance");
    return deterministic(mean);
  }
  if (kind == "gamma") return gamma_law(mean, second_moment);
  if (kind == "two-atom") return two_atom(mean, second_moment);
  throw std::invalid_argument("unknown reservoir kind '" + kind + "'");
}

std::string ReservoirLaw::name() const {
  switch (kind_) {
    case Kind::Deterministic: return "deterministic";
    case Kind::Gamma: return "gamma";
    case Kind::TwoAtom: return "two-atom";
  }
  return "?";
}

double ReservoirLaw::sample(RngStream& rng) const {
  switch (kind_) {
    case Kind::Deterministic:
      return mean_;
    case Kind::Gamma: {
      const double var = variance();
      const double scale = var / mean_;
      const double shape = mean_ / scale;
      return std::gamma_distribution<double>(shape, scale)(rng);
    }
    case Kind::TwoAtom: {
      const double spread = std::sqrt(variance());
      return (rng() & 1u) ? mean_ + spread : std::max(0.0, mean_ - spread);
    }
  }
  return mean_;
}

GeneratorCoefficients coefficients(double alpha, double lambda) {
  if (!(alpha > 0.0 && alpha <= 0.25)) throw std::domain_error("alpha out of range (0, 1/4]");
  if (!(lambda >= 0.0 && lambda < 1.0)) throw std::domain_error("lambda out of range [0, 1)");
  GeneratorCoefficients c;
  c.a_coef = (0.5 - alpha) * (1.0 - lambda);
  c.b_coef = 1.0 - 2.0 * alpha * (1.0 - lambda);
  c.c_coef = 0.5 * lambda + alpha * (1.0 - lambda);
  return c;
}

}  // namespace redchain
