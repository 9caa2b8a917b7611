// sigeq command line: solve one equilibrium, run a certainty-equivalent sweep, or
// check the closed-form values against simulation.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "sigeq/sigeq.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kNotConverged = 2;

struct Common {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> nodes;
};

sigeq::ExperimentConfig load(const Common& c) {
  sigeq::ExperimentConfig cfg =
      c.config.empty() ? sigeq::parse_config("{}") : sigeq::load_config(c.config);
  if (c.seed) cfg.seed = *c.seed;
  if (c.nodes) cfg.nodes = *c.nodes;
  return cfg;
}

void print_strategy(const sigeq::Population& pop, const sigeq::EquilibriumResult& res) {
  std::printf("%-6s", "type");
  for (auto z : sigeq::kAllSignals) std::printf(" %12s", std::string(sigeq::to_string(z)).c_str());
  std::printf(" %14s %14s\n", "M", "value");
  for (std::size_t t = 0; t < pop.size(); ++t) {
    std::printf("%-6zu", t);
    for (double v : res.strategy.row(t)) std::printf(" %12.8f", v);
    std::printf(" %14.10f %14.10f\n", res.per_type_M[t], res.per_type_value[t]);
  }
  std::printf("residual %.3e  iterations %d  converged %s\n", res.residual, res.iterations,
              res.converged ? "yes" : "no");
  if (!res.diagnostics.message.empty()) std::printf("note: %s\n", res.diagnostics.message.c_str());
}

int run_solve(const Common& c, bool alternative) {
  const auto cfg = load(c);
  const auto q = sigeq::Quadrature::gauss_legendre_normal(cfg.nodes, cfg.half_width);
  const auto pop = alternative ? sigeq::alternative_population(cfg, cfg.sweep_values.front())
                               : sigeq::reference_population(cfg);
  const auto res = sigeq::solve_mf_finite(pop, q, cfg.solver);
  print_strategy(pop, res);
  return res.converged ? kOk : kNotConverged;
}

int run_sweep(const Common& c) {
  const auto cfg = load(c);
  const auto table = sigeq::run_experiment(cfg);
  if (c.out.empty()) {
    sigeq::write_csv(table, std::cout);
  } else {
    sigeq::emit_csv(table, c.out);
  }
  return table.all_converged() ? kOk : kNotConverged;
}

int run_simulate(const Common& c) {
  const auto cfg = load(c);
  const auto q = sigeq::Quadrature::gauss_legendre_normal(cfg.nodes, cfg.half_width);
  const auto pop = sigeq::reference_population(cfg);
  const auto res = sigeq::solve_mf_finite(pop, q, cfg.solver);
  print_strategy(pop, res);
  const auto est = sigeq::estimate_utility(pop, res.strategy, *res.stats, cfg.mc_paths,
                                           cfg.horizon, cfg.seed);
  std::printf("%-6s %16s %16s %12s %8s\n", "type", "closed form", "monte carlo", "std err", "z");
  for (std::size_t t = 0; t < pop.size(); ++t) {
    const double z = (est.mean[t] - res.per_type_value[t]) / est.std_error[t];
    std::printf("%-6zu %16.10f %16.10f %12.3e %8.3f\n", t, res.per_type_value[t], est.mean[t],
                est.std_error[t], z);
  }
  return res.converged ? kOk : kNotConverged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Signal-driven mean-field and Nash equilibria for CRRA investors"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config, "JSON experiment config")->check(CLI::ExistingFile);
    sub->add_option("--seed", common.seed, "master seed");
    sub->add_option("--nodes", common.nodes, "quadrature nodes")->check(CLI::Range(2, 100000));
  };

  bool alternative = false;
  auto* solve = app.add_subcommand("solve", "solve one mean-field equilibrium");
  add_common(solve);
  solve->add_flag("--alternative", alternative,
                  "solve the alternative environment at the first sweep value");

  auto* sweep = app.add_subcommand("sweep", "run a certainty-equivalent sweep, write CSV");
  add_common(sweep);
  sweep->add_option("--out", common.out, "CSV output path (stdout if omitted)");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo check of the reference values");
  add_common(simulate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kFailure;
  }

  try {
    if (*solve) return run_solve(common, alternative);
    if (*sweep) return run_sweep(common);
    if (*simulate) return run_simulate(common);
  } catch (const sigeq::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kFailure;
}
