#include "sigeq/quad.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace sigeq {

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x * std::numbers::sqrt2 / 2.0); }

double std_normal_pdf(double x) {
  return std::exp(-0.5 * x * x) * std::numbers::inv_sqrtpi / std::numbers::sqrt2;
}

namespace {

// Phi at an endpoint and its complement 1 - Phi, both computed without cancellation.
double lower_cdf(const Endpoint& e) {
  switch (e.kind) {
    case Endpoint::Kind::MinusInf: return 0.0;
    case Endpoint::Kind::PlusInf: return 1.0;
    case Endpoint::Kind::Finite: return std_normal_cdf(e.value);
  }
  return 0.0;
}

double upper_cdf(const Endpoint& e) {
  switch (e.kind) {
    case Endpoint::Kind::MinusInf: return 1.0;
    case Endpoint::Kind::PlusInf: return 0.0;
    case Endpoint::Kind::Finite: return std_normal_cdf(-e.value);
  }
  return 0.0;
}

double order_key(const Endpoint& e) {
  switch (e.kind) {
    case Endpoint::Kind::MinusInf: return -INFINITY;
    case Endpoint::Kind::PlusInf: return INFINITY;
    case Endpoint::Kind::Finite: return e.value;
  }
  return 0.0;
}

}  // namespace

double normal_prob(const SignalInterval& iv) {
  const double lo = order_key(iv.lo);
  const double hi = order_key(iv.hi);
  if (lo > hi) throw ModelError("interval with lo > hi");
  // In the right tail subtract upper tails; elsewhere subtract lower CDFs.
  if (lo > 0.0) return upper_cdf(iv.lo) - upper_cdf(iv.hi);
  return lower_cdf(iv.hi) - lower_cdf(iv.lo);
}

void gauss_legendre(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n == 0) throw ModelError("Gauss-Legendre rule needs at least one node");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // Tricomi's initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
}

Quadrature Quadrature::gauss_legendre_normal(std::size_t nodes, double half_width) {
  if (nodes < 2) throw ModelError("quadrature needs at least two nodes");
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw ModelError("quadrature half width must be positive and finite");
  }
  Quadrature q;
  q.law_ = Law::StandardNormal;
  q.half_width_ = half_width;
  gauss_legendre(nodes, q.nodes_, q.weights_);
  for (std::size_t k = 0; k < nodes; ++k) {
    q.nodes_[k] *= half_width;
    q.weights_[k] *= half_width * std_normal_pdf(q.nodes_[k]);
  }
  return q;
}

Quadrature Quadrature::discrete(std::span<const double> marks, std::span<const double> probs) {
  if (marks.empty() || marks.size() != probs.size()) {
    throw ModelError("discrete common-mark law needs matching, non-empty marks and probabilities");
  }
  double total = 0.0;
  double width = 0.0;
  for (std::size_t k = 0; k < marks.size(); ++k) {
    if (!std::isfinite(marks[k])) throw ModelError("common marks must be finite");
    if (!(probs[k] >= 0.0)) throw ModelError("common-mark probabilities must be >= 0");
    total += probs[k];
    width = std::max(width, std::abs(marks[k]));
  }
  if (!(std::abs(total - 1.0) <= 1e-12)) {
    std::ostringstream os;
    os.precision(17);
    os << "common-mark probabilities sum to " << total << ", expected 1";
    throw ModelError(os.str());
  }
  Quadrature q;
  q.law_ = Law::Discrete;
  q.nodes_.assign(marks.begin(), marks.end());
  q.weights_.assign(probs.begin(), probs.end());
  q.half_width_ = width;
  return q;
}

double Quadrature::signal_probability(Signal z, double rho) const {
  if (law_ == Law::StandardNormal) return normal_prob(signal_interval(z));
  double p = 0.0;
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    p += weights_[k] * normal_prob(conditional_interval(z, nodes_[k], rho));
  }
  return p;
}

namespace {
std::string non_finite_message(std::size_t node, double mark) {
  std::ostringstream os;
  os.precision(17);
  os << "integrand is not finite at node " << node << " (e_c = " << mark << ")";
  return os.str();
}
}  // namespace

NonFiniteIntegrand::NonFiniteIntegrand(std::size_t node, double mark)
    : std::domain_error(non_finite_message(node, mark)), node_(node) {}

double neumaier_sum(std::span<const double> terms) {
  double sum = 0.0;
  double c = 0.0;
  for (double t : terms) {
    const double s = sum + t;
    if (std::abs(sum) >= std::abs(t)) {
      c += (sum - s) + t;
    } else {
      c += (t - s) + sum;
    }
    sum = s;
  }
  return sum + c;
}

}  // namespace sigeq
