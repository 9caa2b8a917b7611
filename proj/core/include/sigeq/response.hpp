#pragma once

#include <functional>
#include <span>
#include <vector>

#include "sigeq/meanfield.hpp"
#include "sigeq/model.hpp"
#include "sigeq/quad.hpp"

namespace sigeq {

/// Everything one investor's targets need about her environment.
///
/// The peers enter through three scalars and a per-node log weight log g_k. In the mean
/// field log g_k = -theta (1 - alpha) log m(e_k); against n explicit peers it is
/// sum_j log E[(1 + pi^j eta)^(-theta (1 - alpha) / n) | e_k].
struct TargetContext {
  enum class Mode { MeanField, NAgent };

  Mode mode = Mode::MeanField;
  InvestorType type;
  const Quadrature* quad = nullptr;

  double peer_vol = 0.0;    // sigma0 pi aggregate
  double peer_drift = 0.0;  // tau pi aggregate
  double peer_idio = 0.0;   // sigma^2 pi^2 aggregate, zero in the mean field
  std::vector<double> log_g;

  TypeKernel kernel;
  SignalRow signal_prob{};  // P(z) of each received signal

  double q() const { return 1.0 - type.alpha; }
};

TargetContext make_mf_context(const InvestorType& type, const MeanFieldStats& stats,
                              const Quadrature& q);

/// Context of player i against the other entries of `players`.
TargetContext make_nagent_context(std::size_t i, std::span<const InvestorType> players,
                                  const Strategy& strat, const Quadrature& q);

/// [u(1 + phi eta_k, .) - u(1, 1)] at node k, with the peer factor folded into log g_k.
double jump_utility(const TargetContext& ctx, double phi, std::size_t k);

double target_no_signal(double phi, const TargetContext& ctx);
double target_signal(double phi, Signal z, const TargetContext& ctx);

/// Derivative in phi of the target for signal z (None selects the no-signal target).
double target_slope(double phi, Signal z, const TargetContext& ctx);

/// True when the signal target carries no information: zero arrival rate or no jump risk.
bool signal_degenerate(Signal z, const TargetContext& ctx);

struct Maximum {
  double argmax = 0.0;
  double value = 0.0;
};

/// Golden-section search down to a bracket of width tol, one parabolic step through the
/// last three points, then the best of that and the endpoints.
Maximum maximize_concave_1d(const std::function<double(double)>& f, AdmissibleInterval iv,
                            double tol = 1e-10);

/// Root of a decreasing slope on iv by bisection; boundary if the slope keeps one sign.
double maximize_by_slope(const std::function<double(double)>& slope, AdmissibleInterval iv,
                         double tol = 1e-13);

/// Optimal row for one investor. Degenerate signals copy the no-signal position.
SignalRow best_row(const TargetContext& ctx, const Population& pop, std::size_t type_index);

Strategy best_response(const Population& pop, const MeanFieldStats& stats, const Quadrature& q);
Strategy best_response(const Population& pop, const Strategy& env, const Quadrature& q);

/// Each player's best response to the others; `players` carries eps_b via pop.
Strategy best_response_nagent(const Population& players, const Strategy& strat,
                              const Quadrature& q);

}  // namespace sigeq
