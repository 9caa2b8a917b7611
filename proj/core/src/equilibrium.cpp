#include "sigeq/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "sigeq/metrics.hpp"
#include "sigeq/response.hpp"

namespace sigeq {

namespace {

using Vec = std::vector<double>;
using Map = std::function<Vec(const Vec&)>;

void check_config(const SolverConfig& cfg) {
  if (!(cfg.tol > 0.0)) throw ModelError("solver tol must be > 0");
  if (!(cfg.damping > 0.0 && cfg.damping <= 1.0)) throw ModelError("damping must lie in (0, 1]");
  if (cfg.max_iter < 1) throw ModelError("max_iter must be >= 1");
}

Vec flatten(const Strategy& s) {
  Vec v;
  v.reserve(s.n_types() * kSignalCount);
  for (const auto& row : s.rows()) v.insert(v.end(), row.begin(), row.end());
  return v;
}

Strategy unflatten(const Vec& v, std::size_t n_types) {
  Strategy s(n_types);
  for (std::size_t t = 0; t < n_types; ++t) {
    std::copy_n(v.begin() + static_cast<std::ptrdiff_t>(t * kSignalCount), kSignalCount,
                s.row(t).begin());
  }
  return s;
}

double sup_distance(const Vec& a, const Vec& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

struct PicardOutcome {
  Vec x;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
  SolverDiagnostics diag;
};

bool oscillating(const std::vector<double>& hist, int window) {
  const auto n = static_cast<int>(hist.size());
  if (window <= 0 || n <= window) return false;
  return hist[static_cast<std::size_t>(n - 1)] >= hist[static_cast<std::size_t>(n - 1 - window)];
}

PicardOutcome picard_once(const Vec& x0, const Map& F, const SolverConfig& cfg, double omega,
                          const std::function<void(Vec&)>& project, bool watch) {
  PicardOutcome out;
  out.diag.damping_used = omega;
  Vec x = x0;
  for (;;) {
    const Vec fx = F(x);
    const double res = sup_distance(fx, x);
    out.diag.residual_history.push_back(res);
    out.residual = res;
    if (res < cfg.tol) {
      out.converged = true;
      break;
    }
    if (out.iterations >= cfg.max_iter) break;
    if (watch && oscillating(out.diag.residual_history, cfg.oscillation_window)) {
      out.diag.message = "residual did not decrease over the oscillation window";
      break;
    }
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = (1.0 - omega) * x[i] + omega * fx[i];
    if (project) project(x);
    ++out.iterations;
  }
  out.x = std::move(x);
  return out;
}

PicardOutcome picard(const Vec& x0, const Map& F, const SolverConfig& cfg,
                     const std::function<void(Vec&)>& project) {
  const bool watch = cfg.damping == 1.0;
  PicardOutcome out = picard_once(x0, F, cfg, cfg.damping, project, watch);
  if (out.converged || !watch || out.diag.message.empty()) {
    if (!out.converged && out.diag.message.empty()) out.diag.message = "iteration cap reached";
    return out;
  }
  const int spent = out.iterations;
  PicardOutcome retry = picard_once(x0, F, cfg, 0.5, project, false);
  retry.diag.retried = true;
  std::ostringstream os;
  os << "oscillation at full step after " << spent << " iterations; restarted with damping 0.5";
  if (!retry.converged) os << "; iteration cap reached";
  retry.diag.message = os.str();
  return retry;
}

Strategy initial_strategy(const Population& pop, const SolverConfig& cfg) {
  switch (cfg.init) {
    case InitKind::Zeros: {
      Strategy s(pop.size());
      for (std::size_t t = 0; t < pop.size(); ++t) {
        for (Signal z : kAllSignals) s.at(t, z) = pop.interval(t, z).clamp(0.0);
      }
      return s;
    }
    case InitKind::Merton: return merton_strategy(pop);
    case InitKind::Explicit: require_admissible(pop, cfg.init_strategy); return cfg.init_strategy;
  }
  return Strategy(pop.size());
}

std::function<void(Vec&)> box_projection(const Population& pop) {
  return [&pop](Vec& v) {
    for (std::size_t t = 0; t < pop.size(); ++t) {
      for (Signal z : kAllSignals) {
        double& x = v[t * kSignalCount + index(z)];
        x = pop.interval(t, z).clamp(x);
      }
    }
  };
}

void fill_mf_values(EquilibriumResult& res, const Population& pop, const Quadrature& q,
                    const SolverConfig& cfg) {
  const MeanFieldStats& stats = *res.stats;
  for (std::size_t t = 0; t < pop.size(); ++t) {
    const auto& ty = pop.types[t];
    const double M = m_mf(ty, res.strategy.row(t), stats, q);
    res.per_type_M.push_back(M);
    res.per_type_value.push_back(value_mf(ty, M, ty.x0, stats.xbar0, cfg.horizon));
  }
}

}  // namespace

Population player_population(const std::vector<InvestorType>& players, double eps_b) {
  Population pop;
  pop.eps_b = eps_b;
  pop.types = players;
  const double w = 1.0 / static_cast<double>(players.size());
  for (auto& t : pop.types) t.weight = w;
  return pop;
}

EquilibriumResult solve_mf_finite(const Population& pop, const Quadrature& q,
                                  const SolverConfig& cfg) {
  require_valid(pop);
  check_config(cfg);
  const Map F = [&](const Vec& x) {
    return flatten(best_response(pop, unflatten(x, pop.size()), q));
  };
  PicardOutcome out = picard(flatten(initial_strategy(pop, cfg)), F, cfg, box_projection(pop));

  EquilibriumResult res;
  res.strategy = unflatten(out.x, pop.size());
  res.residual = out.residual;
  res.iterations = out.iterations;
  res.converged = out.converged;
  res.diagnostics = std::move(out.diag);
  res.stats = aggregate(pop, res.strategy, q);
  fill_mf_values(res, pop, q, cfg);
  return res;
}

EquilibriumResult solve_nagent(const std::vector<InvestorType>& players, const Quadrature& q,
                               const SolverConfig& cfg, double eps_b) {
  if (players.size() < 2) throw ModelError("an n-agent game needs at least two players");
  const Population pop = player_population(players, eps_b);
  require_valid(pop);
  check_config(cfg);
  const Map F = [&](const Vec& x) {
    return flatten(best_response_nagent(pop, unflatten(x, pop.size()), q));
  };
  PicardOutcome out = picard(flatten(initial_strategy(pop, cfg)), F, cfg, box_projection(pop));

  EquilibriumResult res;
  res.strategy = unflatten(out.x, pop.size());
  res.residual = out.residual;
  res.iterations = out.iterations;
  res.converged = out.converged;
  res.diagnostics = std::move(out.diag);
  const double n = static_cast<double>(players.size() - 1);
  double log_sum = 0.0;
  for (const auto& p : players) log_sum += std::log(p.x0);
  for (std::size_t i = 0; i < players.size(); ++i) {
    const double M = m_nagent(i, pop, res.strategy, q);
    const double xbar0 = std::exp((log_sum - std::log(players[i].x0)) / n);
    res.per_type_M.push_back(M);
    res.per_type_value.push_back(value_mf(players[i], M, players[i].x0, xbar0, cfg.horizon));
  }
  return res;
}

EquilibriumResult solve_mf_statistic(const Population& pop, std::span<const double> marks,
                                     std::span<const double> probs, const SolverConfig& cfg) {
  require_valid(pop);
  check_config(cfg);
  const Quadrature q = Quadrature::discrete(marks, probs);
  const std::size_t K = q.size();

  auto stat_of = [&](const MeanFieldStats& s) {
    Vec v(K + 1);
    v[0] = s.sigma0pi_bar;
    for (std::size_t k = 0; k < K; ++k) v[k + 1] = std::exp(s.log_mean_jump[k]);
    return v;
  };
  auto respond = [&](const Vec& x) {
    MeanFieldStats s;
    s.sigma0pi_bar = x[0];
    s.log_mean_jump.resize(K);
    for (std::size_t k = 0; k < K; ++k) s.log_mean_jump[k] = std::log(x[k + 1]);
    return best_response(pop, s, q);
  };
  const Map F = [&](const Vec& x) { return stat_of(aggregate(pop, respond(x), q)); };

  const Vec x0 = stat_of(aggregate(pop, initial_strategy(pop, cfg), q));
  PicardOutcome out = picard(x0, F, cfg, {});

  EquilibriumResult res;
  res.strategy = respond(out.x);
  res.residual = out.residual;
  res.iterations = out.iterations;
  res.converged = out.converged;
  res.diagnostics = std::move(out.diag);
  res.stats = aggregate(pop, res.strategy, q);
  fill_mf_values(res, pop, q, cfg);
  return res;
}

double residual(const Population& pop, const Strategy& strat, const Quadrature& q) {
  return strategy_distance(best_response(pop, strat, q), strat);
}

}  // namespace sigeq
