#pragma once

#include <memory>
#include <vector>

#include "sigeq/model.hpp"
#include "sigeq/noise.hpp"
#include "sigeq/quad.hpp"

namespace sigeq {

/// Per-type jump-side quantities at the quadrature nodes: own jump sizes and the
/// conditional probabilities N01(I(z, e_k)) of each nonzero signal.
struct TypeKernel {
  std::vector<double> eta;
  std::array<std::vector<double>, kSignalCount> cond;  // empty at the None slot

  static TypeKernel build(const InvestorType& type, const Quadrature& q);
};

/// E[log(1 + pi(zeta) eta(e_c)) | e_c] for one type: the no-signal branch with weight
/// 1 - p_s plus the received branches weighted by p_s N01(I(z, e_c)).
double expected_log_return(const InvestorType& type, const SignalRow& row, double e_c);

/// Sufficient statistic of the environment generated by a population strategy.
class MeanFieldStats {
 public:
  double sigma0pi_bar = 0.0;
  double taupi_bar = 0.0;
  double xbar0 = 1.0;
  /// log m(e_k) at the quadrature nodes.
  std::vector<double> log_mean_jump;

  double mean_jump_at(std::size_t node) const;
  /// Exact m(e_c) for any mark; requires stats produced by aggregate().
  double mean_jump(double e_c) const;
  double log_mean_jump_exact(double e_c) const;
  bool has_source() const { return source_ != nullptr; }

  /// Compares the numbers only, not the evaluator source.
  bool operator==(const MeanFieldStats& o) const {
    return sigma0pi_bar == o.sigma0pi_bar && taupi_bar == o.taupi_bar && xbar0 == o.xbar0 &&
           log_mean_jump == o.log_mean_jump;
  }

 private:
  struct Source {
    Population pop;
    Strategy strat;
  };
  std::shared_ptr<const Source> source_;

  friend MeanFieldStats aggregate(const Population&, const Strategy&, const Quadrature&);
};

/// Environment statistic of pop playing strat. Throws InadmissibleStrategy for a position
/// outside its interval.
MeanFieldStats aggregate(const Population& pop, const Strategy& strat, const Quadrature& q);

/// log of the mean-field geometric average wealth at T along a common-noise realisation.
double mean_log_terminal(const MeanFieldStats& stats, const CommonNoisePath& path, double T);

}  // namespace sigeq
