#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sigeq/meanfield.hpp"
#include "sigeq/model.hpp"
#include "sigeq/noise.hpp"

namespace sigeq {

/// Independent random streams hang off (seed, stream, substream).
enum class Stream : std::uint64_t {
  JumpTimes = 1,
  CommonMarks = 2,
  W0 = 3,
  Idiosyncratic = 4,
  TypeDraw = 5,
  PathSeed = 6,
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t seed, Stream stream, std::uint64_t sub = 0);
std::mt19937_64 make_rng(std::uint64_t seed, Stream stream, std::uint64_t sub = 0);

CommonNoisePath simulate_common(double T, const MarketParams& market, std::uint64_t seed);

struct AgentPath {
  double terminal_wealth = 0.0;
  double log_terminal_wealth = 0.0;
  std::vector<Signal> signals;  // one per jump
  double min_jump_factor = 1.0;
  std::uint64_t seed = 0;
};

/// Exact wealth path: log-normal between jumps, multiplicative jumps at the path's
/// jump times. `agent` selects the idiosyncratic substream.
AgentPath simulate_agent(const InvestorType& type, const SignalRow& row,
                         const CommonNoisePath& path, std::uint64_t agent);

struct UtilityEstimate {
  std::vector<double> mean;
  std::vector<double> std_error;
};

/// Mean utility u(X_T, Xbar_T) per type over n_paths common paths, with Xbar_T taken
/// from the mean-field statistic on each path.
UtilityEstimate estimate_utility(const Population& pop, const Strategy& strat,
                                 const MeanFieldStats& stats, std::size_t n_paths, double T,
                                 std::uint64_t seed);

struct GeometricAverage {
  double value = 0.0;
  double log_value = 0.0;
  double log_std_error = 0.0;  // sample sd of log X^j over sqrt(n)
};

/// (prod_j X^j_T)^(1/n) for n agents of i.i.d. types sharing one common path.
GeometricAverage nagent_geometric_average(std::size_t n, const Population& pop,
                                          const Strategy& strat, const CommonNoisePath& path,
                                          std::uint64_t seed);

}  // namespace sigeq
