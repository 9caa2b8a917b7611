#include "sigeq/sim.hpp"

#include <algorithm>
#include <cmath>

#include "sigeq/metrics.hpp"
#include "sigeq/signal.hpp"

namespace sigeq {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, Stream stream, std::uint64_t sub) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(stream));
  return splitmix64(h ^ sub);
}

std::mt19937_64 make_rng(std::uint64_t seed, Stream stream, std::uint64_t sub) {
  return std::mt19937_64(derive_seed(seed, stream, sub));
}

CommonNoisePath simulate_common(double T, const MarketParams& market, std::uint64_t seed) {
  if (!(T > 0.0)) throw ModelError("horizon must be > 0");
  CommonNoisePath path;
  path.horizon = T;
  path.seed = seed;
  if (market.lambda > 0.0) {
    auto rng = make_rng(seed, Stream::JumpTimes);
    std::exponential_distribution<double> gap(market.lambda);
    for (double t = gap(rng); t < T; t += gap(rng)) path.jump_times.push_back(t);
  }
  auto marks = make_rng(seed, Stream::CommonMarks);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t k = 0; k < path.jump_times.size(); ++k) path.common_marks.push_back(normal(marks));

  auto w0 = make_rng(seed, Stream::W0);
  std::normal_distribution<double> std_normal(0.0, 1.0);
  double prev = 0.0;
  for (double t : path.jump_times) {
    path.w0_increments.push_back(std::sqrt(t - prev) * std_normal(w0));
    prev = t;
  }
  path.w0_increments.push_back(std::sqrt(T - prev) * std_normal(w0));
  return path;
}

AgentPath simulate_agent(const InvestorType& type, const SignalRow& row,
                         const CommonNoisePath& path, std::uint64_t agent) {
  AgentPath out;
  out.seed = derive_seed(path.seed, Stream::Idiosyncratic, agent);
  std::mt19937_64 rng(out.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  const auto& m = type.market;
  const double T = path.horizon;
  const double p0 = row[index(Signal::None)];
  const double w_T = std::sqrt(T) * normal(rng);
  double log_x = std::log(type.x0) +
                 (m.r + p0 * (m.kappa - m.r) -
                  0.5 * (m.sigma * m.sigma + m.sigma0 * m.sigma0) * p0 * p0) * T +
                 m.sigma * p0 * w_T + m.sigma0 * p0 * path.w0_terminal();

  const JumpLaw law = JumpLaw::of(m);
  out.signals.reserve(path.jump_count());
  for (double e_c : path.common_marks) {
    const double e1 = normal(rng);
    const double e2 = unif(rng);
    const Signal z = classify(perturb(type.rho, e_c, e1), e2 <= type.p_s);
    const double factor = 1.0 + row[index(z)] * eta(law, e_c);
    out.min_jump_factor = std::min(out.min_jump_factor, factor);
    out.signals.push_back(z);
    log_x += std::log(factor);
  }
  out.log_terminal_wealth = log_x;
  out.terminal_wealth = std::exp(log_x);
  return out;
}

namespace {

struct Moments {
  double n = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    n += 1.0;
    const double d = x - mean;
    mean += d / n;
    m2 += d * (x - mean);
  }
  double variance() const { return n > 1.0 ? m2 / (n - 1.0) : 0.0; }
};

}  // namespace

UtilityEstimate estimate_utility(const Population& pop, const Strategy& strat,
                                 const MeanFieldStats& stats, std::size_t n_paths, double T,
                                 std::uint64_t seed) {
  if (n_paths < 100) throw ModelError("estimate_utility needs at least 100 paths");
  require_admissible(pop, strat);
  std::vector<Moments> mom(pop.size());
  for (std::size_t p = 0; p < n_paths; ++p) {
    const auto path = simulate_common(T, pop.types.front().market,
                                      derive_seed(seed, Stream::PathSeed, p));
    const double xbar = std::exp(mean_log_terminal(stats, path, T));
    for (std::size_t t = 0; t < pop.size(); ++t) {
      const auto agent = simulate_agent(pop.types[t], strat.row(t), path, t);
      mom[t].add(utility(pop.types[t], agent.terminal_wealth, xbar));
    }
  }
  UtilityEstimate est;
  for (const auto& m : mom) {
    est.mean.push_back(m.mean);
    est.std_error.push_back(std::sqrt(m.variance() / m.n));
  }
  return est;
}

GeometricAverage nagent_geometric_average(std::size_t n, const Population& pop,
                                          const Strategy& strat, const CommonNoisePath& path,
                                          std::uint64_t seed) {
  if (n < 1) throw ModelError("need at least one agent");
  require_admissible(pop, strat);
  std::vector<double> weights;
  for (const auto& t : pop.types) weights.push_back(t.weight);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  auto type_rng = make_rng(seed, Stream::TypeDraw);

  Moments mom;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t t = pick(type_rng);
    const auto agent =
        simulate_agent(pop.types[t], strat.row(t), path, derive_seed(seed, Stream::Idiosyncratic, j));
    mom.add(agent.log_terminal_wealth);
  }
  GeometricAverage g;
  g.log_value = mom.mean;
  g.value = std::exp(mom.mean);
  g.log_std_error = std::sqrt(mom.variance() / mom.n);
  return g;
}

}  // namespace sigeq
