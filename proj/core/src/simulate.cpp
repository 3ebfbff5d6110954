#include "redchain/simulate.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "redchain/profile.hpp"

namespace redchain {

namespace {

int pick_edge(const EventSchedule& schedule, double u) {
  // u is uniform in [0, total_rate); constant rates, linear scan.
  double acc = 0.0;
  const int last = schedule.n_edges() - 1;
  for (int e = 0; e < last; ++e) {
    acc += schedule.rate(e);
    if (u < acc) return e;
  }
  return last;
}

// eps share to the lower-indexed site; the pair sum is preserved exactly as
// stored by computing the upper site as the remainder.
void apply_interior(std::vector<double>& x, int lo_site, double lambda, double eps) {
  double& lo = x[static_cast<std::size_t>(lo_site - 1)];
  double& hi = x[static_cast<std::size_t>(lo_site)];
  const double pair_sum = lo + hi;
  double lo_next = lambda * lo + eps * ((1.0 - lambda) * pair_sum);
  if (lo_next > pair_sum) lo_next = pair_sum;  // rounding guard
  lo = lo_next;
  hi = pair_sum - lo_next;
}

void apply_boundary(std::vector<double>& x, int site, double lambda, double eps, double ghost) {
  double& v = x[static_cast<std::size_t>(site - 1)];
  v = lambda * v + eps * (1.0 - lambda) * (ghost + v);
}

std::uint64_t replica_seed(std::uint64_t seed, int replica) {
  // splitmix64 over (seed, replica) keeps replica streams well separated.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(replica + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void check_law_moments(const ModelParams& p, const ReservoirLaw& left, const ReservoirLaw& right) {
  const auto close = [](double a, double b) {
    return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
  };
  if (!close(left.mean(), p.t_left) || !close(left.second_moment(), p.l2))
    throw std::invalid_argument("left reservoir law moments do not match params");
  if (!close(right.mean(), p.t_right) || !close(right.second_moment(), p.r2))
    throw std::invalid_argument("right reservoir law moments do not match params");
}

}  // namespace

EventRecord step(ChainState& state, const EventSchedule& schedule, double lambda,
                 const RedistributionLaw& nu, const ReservoirLaw& left, const ReservoirLaw& right,
                 RngStream& rng) {
  const int n = schedule.n_sites;
  const double total = schedule.total_rate();

  EventRecord rec;
  rec.holding_time = std::exponential_distribution<double>(total)(rng);
  state.t += rec.holding_time;
  rec.edge = pick_edge(schedule, std::uniform_real_distribution<double>(0.0, total)(rng));
  rec.eps = nu.sample(rng);
  rec.ghost = std::numeric_limits<double>::quiet_NaN();

  if (rec.edge == 0) {
    rec.ghost = left.sample(rng);
    apply_boundary(state.x, 1, lambda, rec.eps, rec.ghost);
  } else if (rec.edge == n) {
    rec.ghost = right.sample(rng);
    apply_boundary(state.x, n, lambda, rec.eps, rec.ghost);
  } else {
    apply_interior(state.x, rec.edge, lambda, rec.eps);
  }
  return rec;
}

Trajectory simulate_trace(const EventSchedule& schedule, double lambda,
                          const RedistributionLaw& nu, const ReservoirLaw& left,
                          const ReservoirLaw& right, const ChainState& initial,
                          long long n_events, std::uint64_t seed) {
  if (initial.x.size() != static_cast<std::size_t>(schedule.n_sites))
    throw std::invalid_argument("simulate_trace: state size mismatch");

  Trajectory traj;
  traj.initial = initial;
  traj.events.reserve(static_cast<std::size_t>(n_events));
  traj.totals.reserve(static_cast<std::size_t>(n_events));

  ChainState state = initial;
  RngStream rng(seed);
  for (long long e = 0; e < n_events; ++e) {
    traj.events.push_back(step(state, schedule, lambda, nu, left, right, rng));
    double total = 0.0;
    for (const double v : state.x) total += v;
    traj.totals.push_back(total);
  }
  return traj;
}

std::vector<double> total_wealth_trace(const Trajectory& traj) {
  return traj.totals;
}

const MomentEstimate& SimulationResult::moment(int i, int j) const {
  if (i > j) std::swap(i, j);
  return moments[static_cast<std::size_t>(MomentMatrix::index_of(n, i, j))];
}

SimulationResult run(const ModelParams& p_in, const RedistributionLaw& nu,
                     const ReservoirLaw& left, const ReservoirLaw& right,
                     const SimulationOptions& opts) {
  const ModelParams p = validate_params(p_in);
  check_law_moments(p, left, right);

  if (opts.batches < 32) throw std::invalid_argument("at least 32 batches required");
  if (opts.replicas < 1) throw std::invalid_argument("replicas must be positive");
  const long long burn_in = opts.burn_in < 0 ? opts.events / 5 : opts.burn_in;
  if (!(opts.events > burn_in)) throw std::invalid_argument("events must exceed burn_in");
  const long long measured = opts.events - burn_in;
  if (measured < opts.batches)
    throw std::invalid_argument("insufficient events for the requested batch count");
  const long long per_batch = measured / opts.batches;

  const int n = p.n_sites;
  const int n_pairs = n * (n + 1) / 2;
  const int total_batches = opts.batches * opts.replicas;
  const EventSchedule schedule = EventSchedule::for_params(p);
  const Profile start_profile = profile_solve(p);

  // Per-batch accumulators: weighted sums and weights, one row per batch.
  const std::size_t n_quant = static_cast<std::size_t>(n + n_pairs);
  std::vector<double> batch_acc(static_cast<std::size_t>(total_batches) * n_quant, 0.0);
  std::vector<double> batch_weight(static_cast<std::size_t>(total_batches), 0.0);
  double total_time = 0.0;

  std::vector<double> held(static_cast<std::size_t>(n));
  for (int rep = 0; rep < opts.replicas; ++rep) {
    RngStream rng(replica_seed(opts.seed, rep));
    ChainState state;
    state.x.resize(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) state.x[static_cast<std::size_t>(i - 1)] = start_profile[i];

    for (long long e = 0; e < burn_in; ++e) step(state, schedule, p.lambda, nu, left, right, rng);

    for (long long e = 0; e < measured; ++e) {
      // The pre-event state is the one held for this event's holding time.
      held = state.x;
      const EventRecord rec = step(state, schedule, p.lambda, nu, left, right, rng);
      const double w = opts.event_weighted ? 1.0 : rec.holding_time;

      const std::size_t b = static_cast<std::size_t>(rep) * opts.batches +
                            static_cast<std::size_t>(std::min<long long>(e / per_batch, opts.batches - 1));
      batch_weight[b] += w;
      double* acc = batch_acc.data() + b * n_quant;
      for (int i = 0; i < n; ++i) acc[i] += w * held[static_cast<std::size_t>(i)];
      double* pair_acc = acc + n;
      int idx = 0;
      for (int i = 0; i < n; ++i) {
        const double xi = held[static_cast<std::size_t>(i)];
        for (int j = i; j < n; ++j) pair_acc[idx++] += w * xi * held[static_cast<std::size_t>(j)];
      }
      total_time += rec.holding_time;
    }
  }

  SimulationResult out;
  out.n = n;
  out.events = opts.events;
  out.sim_time = total_time;
  out.profile.resize(static_cast<std::size_t>(n));
  out.moments.resize(static_cast<std::size_t>(n_pairs));

  double weight_sum = 0.0;
  for (const double w : batch_weight) weight_sum += w;

  for (std::size_t q = 0; q < n_quant; ++q) {
    double acc_sum = 0.0;
    for (int b = 0; b < total_batches; ++b)
      acc_sum += batch_acc[static_cast<std::size_t>(b) * n_quant + q];
    const double mean = acc_sum / weight_sum;

    double var = 0.0;
    for (int b = 0; b < total_batches; ++b) {
      const double bm =
          batch_acc[static_cast<std::size_t>(b) * n_quant + q] / batch_weight[static_cast<std::size_t>(b)];
      var += (bm - mean) * (bm - mean);
    }
    var /= total_batches > 1 ? (total_batches - 1) : 1;

    MomentEstimate est;
    est.mean = mean;
    est.std_error = std::sqrt(var / total_batches);
    est.n_batches = total_batches;
    est.sim_time = total_time;
    if (q < static_cast<std::size_t>(n))
      out.profile[q] = est;
    else
      out.moments[q - static_cast<std::size_t>(n)] = est;
  }
  return out;
}

}  // namespace redchain
