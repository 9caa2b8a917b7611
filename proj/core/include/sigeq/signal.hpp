#pragma once

#include "sigeq/model.hpp"

namespace sigeq {

/// Extended-real interval endpoint.
struct Endpoint {
  enum class Kind { Finite, PlusInf, MinusInf };

  Kind kind = Kind::Finite;
  double value = 0.0;
  bool closed = false;

  static Endpoint finite(double v, bool closed) { return {Kind::Finite, v, closed}; }
  static Endpoint plus_inf() { return {Kind::PlusInf, 0.0, false}; }
  static Endpoint minus_inf() { return {Kind::MinusInf, 0.0, false}; }

  bool operator==(const Endpoint&) const = default;
};

struct SignalInterval {
  Endpoint lo;
  Endpoint hi;

  bool contains(double x) const;
  bool operator==(const SignalInterval&) const = default;
};

struct JumpLaw {
  double kappa_hat = 0.0;
  double sigma_hat = 0.1;

  static JumpLaw of(const MarketParams& m) { return {m.kappa_hat, m.sigma_hat}; }
};

/// Jump return exp(sigma_hat e_c + kappa_hat - sigma_hat^2 / 2) - 1, always > -1.
double eta(const JumpLaw& law, double e_c);

/// Perturbed mark rho e_c + sqrt(1 - rho^2) e_i1.
double perturb(double rho, double e_c, double e_i1);

/// Buckets a perturbed mark by sign and size; 0 if the signal was not received.
/// A received mark of exactly 0 is assigned to -0.5.
Signal classify(double z_perturbed, bool received);

/// Region I(z) of perturbed marks producing the nonzero signal z.
SignalInterval signal_interval(Signal z);

/// Values of e_i1 that produce signal z when the common mark is e_c.
SignalInterval conditional_interval(Signal z, double e_c, double rho);

/// Arrival rate lambda p_s N01(I(z)) of signal z.
double signal_frequency(const InvestorType& type, Signal z);

/// N01(conditional_interval(z, e_c, rho)) for every nonzero z; the None slot holds 0.
/// The six entries sum to 1.
SignalRow received_signal_probs(double rho, double e_c);

}  // namespace sigeq
