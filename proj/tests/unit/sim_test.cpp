#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "sigeq/equilibrium.hpp"
#include "sigeq/metrics.hpp"
#include "sigeq/sim.hpp"

using namespace sigeq;

namespace {

const Quadrature& grid() {
  static const Quadrature q = Quadrature::gauss_legendre_normal();
  return q;
}

}  // namespace

TEST(SimulateCommon, PoissonCountAndMarks) {
  const MarketParams m;
  const int n = 100000;
  double count = 0.0, marks = 0.0, marks_n = 0.0;
  for (int s = 0; s < n; ++s) {
    const auto p = simulate_common(1.0, m, derive_seed(9, Stream::PathSeed, s));
    count += static_cast<double>(p.jump_count());
    for (double e : p.common_marks) marks += e;
    marks_n += static_cast<double>(p.common_marks.size());
    ASSERT_TRUE(std::is_sorted(p.jump_times.begin(), p.jump_times.end()));
    ASSERT_EQ(p.w0_increments.size(), p.jump_count() + 1);
  }
  EXPECT_NEAR(count / n, 10.0, 3.0 * std::sqrt(10.0) / std::sqrt(double(n)));
  EXPECT_NEAR(marks / marks_n, 0.0, 3.0 / std::sqrt(marks_n));
}

TEST(SimulateCommon, BrownianVariance) {
  const MarketParams m;
  const int n = 50000;
  double s2 = 0.0;
  for (int s = 0; s < n; ++s) {
    const double w = simulate_common(2.0, m, derive_seed(4, Stream::PathSeed, s)).w0_terminal();
    s2 += w * w;
  }
  // Var of the sample second moment of N(0, 2) is 2 * 4 / n.
  EXPECT_NEAR(s2 / n, 2.0, 3.0 * std::sqrt(8.0 / n));
}

TEST(SimulateCommon, NoJumpsWithoutIntensity) {
  MarketParams m;
  m.lambda = 0.0;
  for (std::uint64_t s = 0; s < 100; ++s) EXPECT_EQ(simulate_common(1.0, m, s).jump_count(), 0u);
  EXPECT_THROW(simulate_common(0.0, m, 1), ModelError);
}

TEST(SimulateAgent, BankAccount) {
  auto ty = case_study_type(1.0);
  ty.market.r = 0.03;
  ty.x0 = 2.0;
  const auto path = simulate_common(1.5, ty.market, 17);
  const auto a = simulate_agent(ty, SignalRow{}, path, 0);
  EXPECT_NEAR(a.terminal_wealth, 2.0 * std::exp(0.045), 1e-14);
}

TEST(SimulateAgent, ExactLogNormalWithoutJumps) {
  auto ty = case_study_type(1.0);
  ty.market.lambda = 0.0;
  ty.market.r = 0.01;
  const double c = 0.6;
  SignalRow row;
  row.fill(c);
  const auto path = simulate_common(2.0, ty.market, 3);
  const auto a = simulate_agent(ty, row, path, 5);
  const auto& m = ty.market;
  const double expected = std::exp((m.r + c * (m.kappa - m.r) - 0.5 * 0.09 * c * c) * 2.0 +
                                   m.sigma0 * c * path.w0_terminal());
  EXPECT_NEAR(a.terminal_wealth, expected, 1e-13);
}

TEST(SimulateAgent, FloorHoldsForWildJumps) {
  auto ty = case_study_type(1.0);
  ty.market.sigma_hat = 4.0;
  ty.market.lambda = 50.0;
  SignalRow row;
  row.fill(1.0 - kDefaultEpsB);
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto path = simulate_common(1.0, ty.market, s);
    const auto a = simulate_agent(ty, row, path, 0);
    EXPECT_GE(a.min_jump_factor, kDefaultEpsB);
    EXPECT_GT(a.terminal_wealth, 0.0);
  }
}

TEST(SimulateAgent, Reproducible) {
  const auto ty = case_study_type(1.0);
  SignalRow row{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  const auto p1 = simulate_common(1.0, ty.market, 77);
  const auto p2 = simulate_common(1.0, ty.market, 77);
  EXPECT_EQ(p1.jump_times, p2.jump_times);
  EXPECT_EQ(p1.common_marks, p2.common_marks);
  EXPECT_EQ(p1.w0_increments, p2.w0_increments);
  const auto a = simulate_agent(ty, row, p1, 3);
  const auto b = simulate_agent(ty, row, p2, 3);
  EXPECT_EQ(a.terminal_wealth, b.terminal_wealth);
  EXPECT_EQ(a.signals, b.signals);
}

TEST(SimulateAgent, IdiosyncraticStreamsSeparate) {
  auto ty = case_study_type(1.0);
  ty.market.lambda = 200.0;
  ty.p_s = 0.9;
  const auto path = simulate_common(1.0, ty.market, 5);
  ASSERT_GT(path.jump_count(), 100u);
  SignalRow row{};
  const auto a = simulate_agent(ty, row, path, 0);
  const auto b = simulate_agent(ty, row, path, 1);
  ASSERT_EQ(a.signals.size(), b.signals.size());
  std::size_t same = 0;
  for (std::size_t k = 0; k < a.signals.size(); ++k) same += a.signals[k] == b.signals[k];
  EXPECT_LT(same, a.signals.size());
  // Changing one stream leaves the others untouched.
  EXPECT_NE(derive_seed(5, Stream::JumpTimes), derive_seed(5, Stream::CommonMarks));
  EXPECT_NE(derive_seed(5, Stream::Idiosyncratic, 0), derive_seed(5, Stream::Idiosyncratic, 1));
}

TEST(EstimateUtility, MertonClosedForm) {
  auto pop = case_study_population();
  for (auto& t : pop.types) {
    t.market.lambda = 0.0;
    t.theta = 0.0;
  }
  const auto s = merton_strategy(pop);
  const auto stats = aggregate(pop, s, grid());
  const auto est = estimate_utility(pop, s, stats, 100000, 1.0, 8);
  const double v = -std::exp(-oracle::merton_constant(0.08, 0.0, 2.0, 0.09));
  for (std::size_t t = 0; t < 2; ++t) EXPECT_NEAR(est.mean[t], v, 3.0 * est.std_error[t]);
  EXPECT_THROW(estimate_utility(pop, s, stats, 10, 1.0, 8), ModelError);
}

TEST(EstimateUtility, NoConcernIgnoresPeers) {
  auto ty = case_study_type(1.0);
  ty.theta = 0.0;
  for (double xbar : {0.5, 1.0, 3.0}) EXPECT_DOUBLE_EQ(utility(ty, 1.7, xbar), -1.0 / 1.7);
}

TEST(GeometricAverage, SingleAgent) {
  const auto pop = case_study_population();
  const Strategy s(2, 0.4);
  const auto path = simulate_common(1.0, pop.types[0].market, 12);
  const auto g = nagent_geometric_average(1, pop, s, path, 99);
  const auto a = simulate_agent(pop.types[0], s.row(0), path, derive_seed(99, Stream::Idiosyncratic, 0));
  EXPECT_DOUBLE_EQ(g.value, a.terminal_wealth);
}

TEST(GeometricAverage, ZeroPositionsDeterministic) {
  auto pop = case_study_population();
  pop.types[0].market.r = 0.02;
  pop.types[1].market.r = 0.02;
  const auto path = simulate_common(1.0, pop.types[0].market, 12);
  for (std::size_t n : {1u, 10u, 100u}) {
    EXPECT_NEAR(nagent_geometric_average(n, pop, Strategy(2), path, 1).value, std::exp(0.02), 1e-15);
  }
}

TEST(GeometricAverage, LawOfLargeNumbers) {
  const auto pop = case_study_population();
  const auto res = solve_mf_finite(pop, grid());
  const auto path = simulate_common(1.0, pop.types[0].market, 2024);
  const auto g = nagent_geometric_average(5000, pop, res.strategy, path, 31);
  EXPECT_NEAR(g.log_value, mean_log_terminal(*res.stats, path, 1.0), 3.0 * g.log_std_error);
}
