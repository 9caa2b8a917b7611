#include "sigeq/signal.hpp"

#include <cmath>

#include "sigeq/quad.hpp"

namespace sigeq {

namespace {

bool above(const Endpoint& lo, double x) {
  switch (lo.kind) {
    case Endpoint::Kind::MinusInf: return true;
    case Endpoint::Kind::PlusInf: return false;
    case Endpoint::Kind::Finite: return lo.closed ? x >= lo.value : x > lo.value;
  }
  return false;
}

bool below(const Endpoint& hi, double x) {
  switch (hi.kind) {
    case Endpoint::Kind::PlusInf: return true;
    case Endpoint::Kind::MinusInf: return false;
    case Endpoint::Kind::Finite: return hi.closed ? x <= hi.value : x < hi.value;
  }
  return false;
}

void require_nonzero(Signal z) {
  if (z == Signal::None) throw ModelError("no integration interval is defined for the null signal");
}

void require_rho(double rho) {
  if (!(std::abs(rho) < 1.0)) throw ModelError("signal quality requires |rho| < 1");
}

}  // namespace

bool SignalInterval::contains(double x) const { return above(lo, x) && below(hi, x); }

double eta(const JumpLaw& law, double e_c) {
  return std::expm1(law.sigma_hat * e_c + law.kappa_hat - 0.5 * law.sigma_hat * law.sigma_hat);
}

double perturb(double rho, double e_c, double e_i1) {
  require_rho(rho);
  return rho * e_c + std::sqrt(1.0 - rho * rho) * e_i1;
}

Signal classify(double z, bool received) {
  if (!received) return Signal::None;
  const double a = std::abs(z);
  if (z > 0.0) {
    if (a <= 0.5) return Signal::PlusHalf;
    if (a <= 1.0) return Signal::PlusOne;
    return Signal::PlusInf;
  }
  if (a <= 0.5) return Signal::MinusHalf;
  if (a <= 1.0) return Signal::MinusOne;
  return Signal::MinusInf;
}

SignalInterval signal_interval(Signal z) {
  require_nonzero(z);
  using E = Endpoint;
  switch (z) {
    case Signal::PlusInf: return {E::finite(1.0, false), E::plus_inf()};
    case Signal::PlusOne: return {E::finite(0.5, false), E::finite(1.0, true)};
    case Signal::PlusHalf: return {E::finite(0.0, false), E::finite(0.5, true)};
    case Signal::MinusHalf: return {E::finite(-0.5, true), E::finite(0.0, false)};
    case Signal::MinusOne: return {E::finite(-1.0, true), E::finite(-0.5, false)};
    case Signal::MinusInf: return {E::minus_inf(), E::finite(-1.0, false)};
    case Signal::None: break;
  }
  throw ModelError("unreachable signal");
}

SignalInterval conditional_interval(Signal z, double e_c, double rho) {
  require_nonzero(z);
  require_rho(rho);
  // rho e_c + s e_i1 in (a, b]  <=>  e_i1 in ((a - rho e_c) / s, (b - rho e_c) / s]
  const double s = std::sqrt(1.0 - rho * rho);
  const double shift = rho * e_c;
  const SignalInterval base = signal_interval(z);
  auto map = [&](const Endpoint& ep) {
    if (ep.kind != Endpoint::Kind::Finite) return ep;
    return Endpoint::finite((ep.value - shift) / s, ep.closed);
  };
  return {map(base.lo), map(base.hi)};
}

double signal_frequency(const InvestorType& type, Signal z) {
  return type.market.lambda * type.p_s * normal_prob(signal_interval(z));
}

SignalRow received_signal_probs(double rho, double e_c) {
  SignalRow out{};
  for (Signal z : kNonzeroSignals) out[index(z)] = normal_prob(conditional_interval(z, e_c, rho));
  return out;
}

}  // namespace sigeq
