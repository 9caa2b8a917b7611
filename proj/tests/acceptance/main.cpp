// Acceptance suite. Prints one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sigeq/sigeq.hpp"

using namespace sigeq;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const Quadrature& grid() {
  static const Quadrature q = Quadrature::gauss_legendre_normal();
  return q;
}

Population merton_pop() {
  auto pop = case_study_population();
  for (auto& t : pop.types) {
    t.market.lambda = 0.0;
    t.theta = 0.0;
  }
  return pop;
}

Strategy random_strategy(const Population& pop, std::mt19937_64& rng) {
  Strategy s(pop.types.size());
  for (std::size_t t = 0; t < pop.types.size(); ++t) {
    for (Signal z : kAllSignals) {
      const auto iv = pop.interval(t, z);
      s.at(t, z) = std::uniform_real_distribution<double>(iv.lo, iv.hi)(rng);
    }
  }
  return s;
}

Outcome merton_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto pop = merton_pop();
  const auto res = solve_mf_finite(pop, grid());
  const double secs = seconds_since(t0);
  double err = 0.0;
  for (std::size_t t = 0; t < 2; ++t) {
    for (Signal z : kAllSignals) err = std::max(err, std::abs(res.strategy.at(t, z) - 0.444444));
  }
  const double M_exact = oracle::merton_constant(0.08, 0.0, 2.0, 0.09);
  const double v_exact = -std::exp(-M_exact);
  const double M_err = std::abs(res.per_type_M[0] - M_exact);
  const double v_err = std::abs(res.per_type_value[0] - v_exact);
  const bool pass = res.converged && res.iterations == 1 && err < 1e-6 &&
                    std::abs(res.per_type_M[0] - 0.0177778) < 1e-7 && M_err < 1e-9 &&
                    std::abs(v_exact - (-0.982379)) < 1e-6 && v_err < 1e-8 && secs < 1.0;
  return {pass, fmt("max|phi-0.444444|=%.2e iters=%d M=%.10f value=%.10f t=%.3fs", err,
                    res.iterations, res.per_type_M[0], res.per_type_value[0], secs)};
}

Outcome fixed_point_residual() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto pop = case_study_population();
  const auto res = solve_mf_finite(pop, grid());
  const double again = residual(pop, res.strategy, grid());
  const double secs = seconds_since(t0);
  const bool pass = res.converged && res.residual < 1e-8 && res.iterations <= 500 && again < 1e-8 &&
                    secs < 30.0;
  return {pass, fmt("residual=%.3e recomputed=%.3e iters=%d t=%.2fs", res.residual, again,
                    res.iterations, secs)};
}

Outcome symmetry() {
  const auto mf = solve_mf_finite(case_study_population(), grid());
  double mf_gap = 0.0;
  for (Signal z : kAllSignals) {
    mf_gap = std::max(mf_gap, std::abs(mf.strategy.at(0, z) - mf.strategy.at(1, z)));
  }
  const std::vector<InvestorType> players(6, case_study_type(1.0 / 6.0));
  const auto na = solve_nagent(players, grid());
  double na_gap = 0.0;
  for (std::size_t i = 1; i < players.size(); ++i) {
    for (Signal z : kAllSignals) {
      na_gap = std::max(na_gap, std::abs(na.strategy.at(i, z) - na.strategy.at(0, z)));
    }
  }
  const bool pass = mf.converged && na.converged && mf_gap < 1e-8 && na_gap < 1e-8;
  return {pass, fmt("mean-field gap=%.2e n-agent gap=%.2e (6 players)", mf_gap, na_gap)};
}

Outcome uniqueness_regression() {
  const auto pop = case_study_population();
  std::mt19937_64 rng(derive_seed(2024, Stream::TypeDraw));
  std::vector<Strategy> found;
  bool all_converged = true;
  for (int k = 0; k < 10; ++k) {
    SolverConfig cfg;
    cfg.init = InitKind::Explicit;
    cfg.init_strategy = random_strategy(pop, rng);
    const auto res = solve_mf_finite(pop, grid(), cfg);
    all_converged = all_converged && res.converged;
    found.push_back(res.strategy);
  }
  double spread = 0.0;
  for (std::size_t a = 0; a < found.size(); ++a) {
    for (std::size_t b = a + 1; b < found.size(); ++b) {
      spread = std::max(spread, strategy_distance(found[a], found[b]));
    }
  }
  return {all_converged && spread < 1e-7, fmt("max pairwise distance=%.2e", spread)};
}

Outcome mc_value() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto pop = case_study_population();
  const auto res = solve_mf_finite(pop, grid());
  const auto est = estimate_utility(pop, res.strategy, *res.stats, 100000, 1.0, 20240601);
  const double secs = seconds_since(t0);
  bool pass = res.converged && secs < 120.0;
  std::string detail;
  for (std::size_t t = 0; t < 2; ++t) {
    const double z = (est.mean[t] - res.per_type_value[t]) / est.std_error[t];
    pass = pass && std::abs(z) <= 3.0;
    detail += fmt("type %zu: mc=%.6f closed=%.6f z=%.2f; ", t, est.mean[t], res.per_type_value[t], z);
  }
  return {pass, detail + fmt("t=%.1fs", secs)};
}

Outcome lln() {
  const auto pop = case_study_population();
  const auto res = solve_mf_finite(pop, grid());
  int ok = 0;
  double worst = 0.0;
  for (std::uint64_t p = 0; p < 20; ++p) {
    const auto path = simulate_common(1.0, pop.types[0].market, derive_seed(77, Stream::PathSeed, p));
    const auto g = nagent_geometric_average(5000, pop, res.strategy, path, derive_seed(78, Stream::PathSeed, p));
    const double z = (g.log_value - mean_log_terminal(*res.stats, path, 1.0)) / g.log_std_error;
    worst = std::max(worst, std::abs(z));
    ok += std::abs(z) <= 3.0;
  }
  return {res.converged && ok >= 18, fmt("%d/20 paths within 3 SE, worst |z|=%.2f", ok, worst)};
}

std::string ce_list(const ExperimentTable& t) {
  std::string s;
  for (const auto& r : t.rows) s += fmt("%g:%.6f ", r.sweep_value, r.ce);
  return s;
}

Outcome ce_signal_frequency() {
  const auto cfg = parse_config(R"({"sweep": {"parameter": "p_s_B",
                                              "values": [0, 0.25, 0.5, 0.75, 0.999]}})");
  const auto t = run_experiment(cfg);
  bool pass = t.all_converged() && std::abs(t.rows[2].ce - 1.0) < 1e-9;
  for (std::size_t i = 1; i < t.rows.size(); ++i) pass = pass && t.rows[i].ce - t.rows[i - 1].ce >= -1e-6;
  return {pass, "CE " + ce_list(t)};
}

Outcome ce_signal_quality() {
  const auto cfg = parse_config(R"({"sweep": {"parameter": "rho_B",
                                              "values": [0, 0.2, 0.4, 0.6, 0.8]}})");
  const auto t = run_experiment(cfg);
  std::size_t peak = 0;
  for (std::size_t i = 1; i < t.rows.size(); ++i) {
    if (t.rows[i].ce > t.rows[peak].ce) peak = i;
  }
  const double c0 = t.rows[0].ce, c4 = t.rows[2].ce, c8 = t.rows[4].ce;
  const bool pass = t.all_converged() && peak > 0 && peak + 1 < t.rows.size() && c4 - c0 > 1e-5 &&
                    c4 - c8 > 1e-5;
  return {pass, "CE " + ce_list(t)};
}

Outcome ce_concern() {
  bool pass = true;
  std::string detail;
  std::vector<double> at_one;
  for (double ps : {0.1, 0.5, 0.9}) {
    const auto cfg = parse_config(fmt(R"({"alternative": {"B": {"p_s": %.17g}},
        "sweep": {"parameter": "theta_B", "values": [0, 0.25, 0.5, 0.75, 1]}})", ps));
    const auto t = run_experiment(cfg);
    pass = pass && t.all_converged();
    for (std::size_t i = 1; i < t.rows.size(); ++i) pass = pass && t.rows[i].ce > t.rows[i - 1].ce;
    at_one.push_back(t.rows.back().ce);
    detail += fmt("p_s_B=%g: ", ps) + ce_list(t) + "| ";
  }
  pass = pass && at_one[2] > at_one[1] && at_one[1] > at_one[0];
  return {pass, detail};
}

Outcome concavity() {
  std::mt19937_64 rng(derive_seed(99, Stream::TypeDraw));
  std::uniform_real_distribution<double> U(0.0, 1.0);
  double worst_d2 = -INFINITY, worst_gap = INFINITY;
  for (int e = 0; e < 5; ++e) {
    auto pop = case_study_population();
    for (auto& ty : pop.types) {
      ty.p_s = 0.05 + 0.9 * U(rng);
      ty.rho = U(rng) * 0.95;
      ty.theta = U(rng);
    }
    const auto env = random_strategy(pop, rng);
    const auto stats = aggregate(pop, env, grid());
    for (std::size_t t = 0; t < 2; ++t) {
      const auto ctx = make_mf_context(pop.types[t], stats, grid());
      const auto row = best_row(ctx, pop, t);
      for (Signal z : kAllSignals) {
        const auto iv = pop.interval(t, z);
        const std::function<double(double)> f = [&](double phi) {
          return z == Signal::None ? target_no_signal(phi, ctx) : target_signal(phi, z, ctx);
        };
        const int n = 10000;
        const double h = (iv.hi - iv.lo) / (n - 1);
        double best_grid = -INFINITY;
        std::vector<double> v(n);
        for (int i = 0; i < n; ++i) {
          v[i] = f(iv.lo + h * i);
          best_grid = std::max(best_grid, v[i]);
        }
        for (int i = 1; i + 1 < n; i += 7) worst_d2 = std::max(worst_d2, v[i - 1] - 2 * v[i] + v[i + 1]);
        worst_gap = std::min(worst_gap, f(row[index(z)]) - best_grid);
      }
    }
  }
  return {worst_d2 <= 1e-10 && worst_gap >= -1e-9,
          fmt("max second difference=%.2e min(argmax - grid)=%.2e", worst_d2, worst_gap)};
}

Outcome cross_solver() {
  auto pop = case_study_population();
  pop.types[1].p_s = 0.8;
  pop.types[1].rho = 0.3;
  const double s3 = std::sqrt(3.0);
  const std::vector<double> marks{-s3, 0.0, s3};
  const std::vector<double> probs{1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0};
  const auto stat = solve_mf_statistic(pop, marks, probs);
  const auto fin = solve_mf_finite(pop, Quadrature::discrete(marks, probs));
  const double d = strategy_distance(stat.strategy, fin.strategy);
  return {stat.converged && fin.converged && d < 1e-6, fmt("distance=%.2e", d)};
}

Outcome positivity() {
  const auto pop = case_study_population();
  const auto res = solve_mf_finite(pop, grid());
  std::size_t jumps = 0, paths = 0, bad_jump = 0, bad_wealth = 0;
  double min_factor = INFINITY;
  for (std::uint64_t p = 0; jumps < 1000000; ++p) {
    const auto path = simulate_common(1.0, pop.types[0].market, derive_seed(12, Stream::PathSeed, p));
    for (std::size_t t = 0; t < 2; ++t) {
      const auto a = simulate_agent(pop.types[t], res.strategy.row(t), path,
                                    derive_seed(12, Stream::Idiosyncratic, 2 * p + t));
      jumps += a.signals.size();
      min_factor = std::min(min_factor, a.min_jump_factor);
      bad_jump += a.min_jump_factor < pop.eps_b;
      bad_wealth += !(a.terminal_wealth > 0.0);
      ++paths;
    }
  }
  return {bad_jump == 0 && bad_wealth == 0,
          fmt("%zu jump returns over %zu agent paths, min 1+phi*eta=%.4f, nonpositive wealth=%zu",
              jumps, paths, min_factor, bad_wealth)};
}

Outcome determinism() {
  const auto cfg = parse_config(R"({"sweep": {"parameter": "rho_B", "values": [0.1, 0.5, 0.9]},
                                    "mc": {"seed": 7}})");
  std::ostringstream a, b;
  write_csv(run_experiment(cfg), a);
  write_csv(run_experiment(cfg), b);
  return {a.str() == b.str() && !a.str().empty(), fmt("%zu bytes per run", a.str().size())};
}

struct Criterion {
  const char* id;
  const char* name;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {"01", "merton_oracle", merton_oracle},
    {"02", "fixed_point_residual", fixed_point_residual},
    {"03", "symmetry", symmetry},
    {"04", "uniqueness_regression", uniqueness_regression},
    {"05", "mc_value", mc_value},
    {"06", "lln", lln},
    {"07", "ce_signal_frequency", ce_signal_frequency},
    {"08", "ce_signal_quality", ce_signal_quality},
    {"09", "ce_concern", ce_concern},
    {"10", "concavity", concavity},
    {"11", "cross_solver", cross_solver},
    {"12", "positivity", positivity},
    {"13", "determinism", determinism},
};

}  // namespace

int main(int argc, char** argv) {
  std::string only;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only = argv[++i];
    } else {
      std::fprintf(stderr, "usage: %s [--only NN]\n", argv[0]);
      return 2;
    }
  }
  int failed = 0, ran = 0;
  for (const auto& c : kCriteria) {
    if (!only.empty() && only != c.id) continue;
    ++ran;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("[%s] %s %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  if (ran == 0) {
    std::fprintf(stderr, "no criterion matches %s\n", only.c_str());
    return 2;
  }
  return failed == 0 ? 0 : 1;
}
