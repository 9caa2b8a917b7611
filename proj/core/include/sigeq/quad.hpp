#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sigeq/signal.hpp"

namespace sigeq {

/// Standard normal CDF, evaluated as erfc(-x / sqrt(2)) / 2.
///
/// glibc's erfc is accurate to about one ulp, so the absolute error is below 1e-16 on
/// the whole real line (well inside the 1e-12 budget on [-8, 8]).
double std_normal_cdf(double x);

double std_normal_pdf(double x);

/// Standard normal probability of an extended-real interval. Tails are evaluated on the
/// side that avoids cancellation.
double normal_prob(const SignalInterval& iv);

/// Node/weight rule for expectations over the common mark e_c.
///
/// StandardNormal: Gauss-Legendre nodes on [-L, L] with weights premultiplied by the
/// N(0, 1) density. Discrete: a finite common-mark law given as (mark, probability) pairs.
class Quadrature {
 public:
  enum class Law { StandardNormal, Discrete };

  static constexpr std::size_t kDefaultNodes = 128;
  static constexpr double kDefaultHalfWidth = 8.0;

  static Quadrature gauss_legendre_normal(std::size_t nodes = kDefaultNodes,
                                          double half_width = kDefaultHalfWidth);
  static Quadrature discrete(std::span<const double> marks, std::span<const double> probs);

  Law law() const { return law_; }
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  std::size_t size() const { return nodes_.size(); }
  double half_width() const { return half_width_; }

  /// Marginal probability that a received signal equals z:
  /// N01(I(z)) under the normal law, sum_k p_k N01(I(z, e_k)) under a discrete law.
  double signal_probability(Signal z, double rho) const;

 private:
  Law law_ = Law::StandardNormal;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  double half_width_ = kDefaultHalfWidth;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights);

class NonFiniteIntegrand : public std::domain_error {
 public:
  NonFiniteIntegrand(std::size_t node, double mark);
  std::size_t node() const { return node_; }

 private:
  std::size_t node_;
};

/// Compensated sum in index order.
double neumaier_sum(std::span<const double> terms);

/// sum_k w_k f(e_k), throwing NonFiniteIntegrand at the first node where f is not finite.
template <typename F>
  requires std::invocable<F&, double>
double expect_outer(F&& f, const Quadrature& q) {
  const auto nodes = q.nodes();
  const auto weights = q.weights();
  std::vector<double> terms(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const double v = static_cast<double>(f(nodes[k]));
    if (!std::isfinite(v)) throw NonFiniteIntegrand(k, nodes[k]);
    terms[k] = weights[k] * v;
  }
  return neumaier_sum(terms);
}

}  // namespace sigeq
