#pragma once

#include <cstdint>
#include <vector>

#include "redchain/model.hpp"
#include "redchain/solver.hpp"

namespace redchain {

// Chain configuration: one nonnegative value per site plus elapsed time.
struct ChainState {
  std::vector<double> x;
  double t = 0.0;
};

// Event clocks: edge k connects sites (k, k+1) for k = 0..N, the boundary
// edges running at their gamma rates. Rates are state-independent.
struct EventSchedule {
  int n_sites = 0;
  double gamma_left = 1.0;
  double gamma_right = 1.0;

  int n_edges() const { return n_sites + 1; }
  double rate(int edge) const {
    if (edge == 0) return gamma_left;
    if (edge == n_sites) return gamma_right;
    return 1.0;
  }
  double total_rate() const { return (n_sites - 1) + gamma_left + gamma_right; }

  static EventSchedule for_params(const ModelParams& p) {
    return {p.n_sites, p.gamma_left, p.gamma_right};
  }
};

// What one event did: which edge fired, the redistribution fraction drawn,
// and the ghost value sampled (NaN for interior edges).
struct EventRecord {
  double holding_time = 0.0;
  int edge = -1;
  double eps = 0.0;
  double ghost = 0.0;
};

// Advances the state by one event: exponential holding time at the total
// rate, edge chosen proportionally to rate, then the redistribution map with
// retention lambda. The lower-indexed site receives the eps share. Interior
// events conserve the pair sum exactly as stored.
EventRecord step(ChainState& state, const EventSchedule& schedule, double lambda,
                 const RedistributionLaw& nu, const ReservoirLaw& left, const ReservoirLaw& right,
                 RngStream& rng);

// A recorded trajectory for conservation and replay diagnostics.
struct Trajectory {
  ChainState initial;
  std::vector<EventRecord> events;
  std::vector<double> totals;  // chain total after each event
};

Trajectory simulate_trace(const EventSchedule& schedule, double lambda,
                          const RedistributionLaw& nu, const ReservoirLaw& left,
                          const ReservoirLaw& right, const ChainState& initial,
                          long long n_events, std::uint64_t seed);

// Per-event chain totals; constant across interior events.
std::vector<double> total_wealth_trace(const Trajectory& traj);

// A time-weighted stationary average with its batch-means error bar.
struct MomentEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  int n_batches = 0;
  double sim_time = 0.0;
};

struct SimulationOptions {
  long long events = 1'000'000;
  long long burn_in = -1;  // negative: default to events / 5
  int batches = 64;        // at least 32
  std::uint64_t seed = 1;
  int replicas = 1;
  bool event_weighted = false;  // diagnostic estimator; default is time-weighted
};

// Estimated profile and two-point moments with batch-means standard errors.
struct SimulationResult {
  int n = 0;
  std::vector<MomentEstimate> profile;  // site i at [i-1]
  std::vector<MomentEstimate> moments;  // packed like MomentMatrix
  double sim_time = 0.0;
  long long events = 0;

  const MomentEstimate& site(int i) const { return profile[static_cast<std::size_t>(i - 1)]; }
  const MomentEstimate& moment(int i, int j) const;
};

// Runs the chain from the stationary-profile initial state and returns
// time-weighted averages over the post-burn-in trajectory. The laws'
// declared moments must match the params fields. Replicas use derived,
// non-overlapping streams and merge deterministically.
SimulationResult run(const ModelParams& p, const RedistributionLaw& nu, const ReservoirLaw& left,
                     const ReservoirLaw& right, const SimulationOptions& opts);

}  // namespace redchain
