#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sigeq/meanfield.hpp"
#include "sigeq/model.hpp"
#include "sigeq/quad.hpp"

namespace sigeq {

enum class InitKind { Zeros, Merton, Explicit };

struct SolverConfig {
  double tol = 1e-8;
  int max_iter = 500;
  double damping = 1.0;
  InitKind init = InitKind::Zeros;
  Strategy init_strategy;  // used when init == Explicit
  double horizon = 1.0;    // T for the reported values
  // Window over which a non-decreasing residual at full step counts as oscillation.
  int oscillation_window = 50;
};

struct SolverDiagnostics {
  std::vector<double> residual_history;
  double damping_used = 1.0;
  bool retried = false;
  std::string message;
};

struct EquilibriumResult {
  Strategy strategy;
  double residual = 0.0;
  int iterations = 0;
  std::vector<double> per_type_M;
  std::vector<double> per_type_value;
  bool converged = false;
  std::optional<MeanFieldStats> stats;  // mean-field solvers only
  SolverDiagnostics diagnostics;
};

/// Damped Picard iteration pi <- (1 - w) pi + w BR(aggregate(pi)) over the type table.
EquilibriumResult solve_mf_finite(const Population& pop, const Quadrature& q,
                                  const SolverConfig& cfg = {});

/// Nash equilibrium among the listed players (two or more).
EquilibriumResult solve_nagent(const std::vector<InvestorType>& players, const Quadrature& q,
                               const SolverConfig& cfg = {}, double eps_b = kDefaultEpsB);

/// Fixed point on the statistic (sigma0 pi_bar, m(e_1), ..., m(e_K)) for a finite
/// common-mark law; the residual is measured on that vector.
EquilibriumResult solve_mf_statistic(const Population& pop, std::span<const double> marks,
                                     std::span<const double> probs, const SolverConfig& cfg = {});

/// strategy_distance(best_response(aggregate(strat)), strat).
double residual(const Population& pop, const Strategy& strat, const Quadrature& q);

/// Equal-weight population built from a list of players.
Population player_population(const std::vector<InvestorType>& players, double eps_b);

}  // namespace sigeq
