#include "sigeq/metrics.hpp"

#include <cmath>

namespace sigeq {

double utility(const InvestorType& type, double x, double xbar) {
  const double q = 1.0 - type.alpha;
  return std::exp(q * (std::log(x) - type.theta * std::log(xbar))) / q;
}

double m_constant(const TargetContext& ctx, const SignalRow& row) {
  const auto& t = ctx.type;
  const auto& m = t.market;
  const double q = ctx.q();
  double M = -t.theta * (ctx.peer_drift - m.r) +
             0.5 * t.theta * t.theta * q * (ctx.peer_vol * ctx.peer_vol + ctx.peer_idio);
  M += target_no_signal(row[index(Signal::None)], ctx);
  const auto w = ctx.quad->weights();
  for (Signal z : kNonzeroSignals) {
    const auto& c = ctx.kernel.cond[index(z)];
    double acc = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      acc += w[k] * c[k] * jump_utility(ctx, row[index(z)], k);
    }
    M += m.lambda * t.p_s * acc;
  }
  return M;
}

double m_constant_optimal(const TargetContext& ctx, const Population& pop,
                          std::size_t type_index) {
  return m_constant(ctx, best_row(ctx, pop, type_index));
}

double m_mf(const InvestorType& type, const SignalRow& row, const MeanFieldStats& stats,
            const Quadrature& q) {
  return m_constant(make_mf_context(type, stats, q), row);
}

double m_nagent(std::size_t i, const Population& players, const Strategy& strat,
                const Quadrature& q) {
  return m_constant(make_nagent_context(i, players.types, strat, q), strat.row(i));
}

double value_mf(const InvestorType& type, double M, double x0, double xbar0, double T) {
  const double q = 1.0 - type.alpha;
  return utility(type, x0, xbar0) *
         std::exp(T * q * ((1.0 - type.theta) * type.market.r + M));
}

double certainty_equivalent(double M_alt, double M_ref) { return std::exp(M_alt - M_ref); }

}  // namespace sigeq
