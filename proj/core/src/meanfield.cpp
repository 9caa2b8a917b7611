#include "sigeq/meanfield.hpp"

#include <cmath>

#include "sigeq/signal.hpp"

namespace sigeq {

TypeKernel TypeKernel::build(const InvestorType& type, const Quadrature& q) {
  TypeKernel k;
  const auto nodes = q.nodes();
  const JumpLaw law = JumpLaw::of(type.market);
  k.eta.resize(nodes.size());
  for (Signal z : kNonzeroSignals) k.cond[index(z)].resize(nodes.size());
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    k.eta[n] = sigeq::eta(law, nodes[n]);
    const SignalRow probs = received_signal_probs(type.rho, nodes[n]);
    for (Signal z : kNonzeroSignals) k.cond[index(z)][n] = probs[index(z)];
  }
  return k;
}

double expected_log_return(const InvestorType& type, const SignalRow& row, double e_c) {
  const double e = eta(JumpLaw::of(type.market), e_c);
  const SignalRow probs = received_signal_probs(type.rho, e_c);
  double received = 0.0;
  for (Signal z : kNonzeroSignals) {
    received += std::log1p(row[index(z)] * e) * probs[index(z)];
  }
  return (1.0 - type.p_s) * std::log1p(row[index(Signal::None)] * e) + type.p_s * received;
}

double MeanFieldStats::mean_jump_at(std::size_t node) const {
  return std::exp(log_mean_jump.at(node));
}

double MeanFieldStats::log_mean_jump_exact(double e_c) const {
  if (!source_) throw std::logic_error("mean-jump evaluator needs stats built by aggregate()");
  double acc = 0.0;
  for (std::size_t t = 0; t < source_->pop.size(); ++t) {
    const auto& ty = source_->pop.types[t];
    acc += ty.weight * expected_log_return(ty, source_->strat.row(t), e_c);
  }
  return acc;
}

double MeanFieldStats::mean_jump(double e_c) const { return std::exp(log_mean_jump_exact(e_c)); }

MeanFieldStats aggregate(const Population& pop, const Strategy& strat, const Quadrature& q) {
  require_admissible(pop, strat);
  MeanFieldStats s;
  s.sigma0pi_bar = 0.0;
  s.taupi_bar = 0.0;
  double log_x = 0.0;
  const auto nodes = q.nodes();
  s.log_mean_jump.assign(nodes.size(), 0.0);
  for (std::size_t t = 0; t < pop.size(); ++t) {
    const auto& ty = pop.types[t];
    const auto& m = ty.market;
    const double p0 = strat.at(t, Signal::None);
    s.sigma0pi_bar += ty.weight * m.sigma0 * p0;
    s.taupi_bar += ty.weight * (m.r + p0 * (m.kappa - m.r) -
                                0.5 * (m.sigma * m.sigma + m.sigma0 * m.sigma0) * p0 * p0);
    log_x += ty.weight * std::log(ty.x0);
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      s.log_mean_jump[k] += ty.weight * expected_log_return(ty, strat.row(t), nodes[k]);
    }
  }
  s.xbar0 = std::exp(log_x);
  s.source_ = std::make_shared<const MeanFieldStats::Source>(MeanFieldStats::Source{pop, strat});
  return s;
}

double mean_log_terminal(const MeanFieldStats& stats, const CommonNoisePath& path, double T) {
  double v = std::log(stats.xbar0) + stats.taupi_bar * T + stats.sigma0pi_bar * path.w0_terminal();
  for (double e_c : path.common_marks) v += stats.log_mean_jump_exact(e_c);
  return v;
}

}  // namespace sigeq
