#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sigeq {

/// Market coefficients seen by one investor type.
///
/// Prices follow dS/S = kappa dt + sigma dW + sigma0 dW0 + eta(e) N(dt, de) with
/// log-normal jump returns eta(e_c) = exp(sigma_hat e_c + kappa_hat - sigma_hat^2/2) - 1
/// arriving at rate lambda.
struct MarketParams {
  double r = 0.0;
  double kappa = 0.08;
  double sigma = 0.0;
  double sigma0 = 0.3;
  double kappa_hat = 0.0;
  double sigma_hat = 0.1;
  double lambda = 10.0;

  bool operator==(const MarketParams&) const = default;
};

/// Type vector of an investor together with its population proportion.
struct InvestorType {
  double x0 = 1.0;
  MarketParams market{};
  double p_s = 0.5;     // probability of receiving a signal at a jump
  double rho = 0.5;     // signal quality
  double alpha = 2.0;   // relative risk aversion
  double theta = 0.5;   // relative performance concern
  double weight = 1.0;  // population proportion

  bool operator==(const InvestorType&) const = default;
};

/// Finite signal alphabet. The infinite labels are variants, not floating point infinities.
enum class Signal : std::size_t {
  MinusInf = 0,
  MinusOne,
  MinusHalf,
  None,
  PlusHalf,
  PlusOne,
  PlusInf,
};

inline constexpr std::size_t kSignalCount = 7;

inline constexpr std::array<Signal, kSignalCount> kAllSignals{
    Signal::MinusInf, Signal::MinusOne, Signal::MinusHalf, Signal::None,
    Signal::PlusHalf, Signal::PlusOne,  Signal::PlusInf};

inline constexpr std::array<Signal, kSignalCount - 1> kNonzeroSignals{
    Signal::MinusInf, Signal::MinusOne, Signal::MinusHalf,
    Signal::PlusHalf, Signal::PlusOne,  Signal::PlusInf};

constexpr std::size_t index(Signal z) { return static_cast<std::size_t>(z); }

/// Mirror image z -> -z; the null signal is its own mirror.
constexpr Signal mirror(Signal z) {
  return static_cast<Signal>(kSignalCount - 1 - index(z));
}

std::string_view to_string(Signal z);

/// Parses "-inf", "-1", "-0.5", "0", "0.5", "1", "inf" (an optional leading '+' is accepted).
Signal parse_signal(std::string_view text);

/// Compact position bounds [lo, hi].
struct AdmissibleInterval {
  double lo = 0.0;
  double hi = 1.0;

  bool contains(double phi) const { return phi >= lo && phi <= hi; }
  double clamp(double phi) const { return phi < lo ? lo : (phi > hi ? hi : phi); }
};

inline constexpr double kDefaultEpsB = 1e-6;

/// Finite mixture of investor types.
///
/// With log-normal jumps the unrestricted position set is [0, 1] for every signal;
/// positions are kept in [0, 1 - eps_b] so that 1 + phi * eta >= eps_b after any jump.
struct Population {
  std::vector<InvestorType> types;
  double eps_b = kDefaultEpsB;

  std::size_t size() const { return types.size(); }
  AdmissibleInterval interval(std::size_t type, Signal z) const;
};

/// Raised when an operation receives parameters outside its domain.
class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Violation {
  std::ptrdiff_t type_index = -1;  // -1 for population-level violations
  std::string message;
};

/// Checks every type and population invariant; empty result iff the population is valid.
std::vector<Violation> validate_population(const Population& pop);

/// Throws ModelError listing all violations, if any.
void require_valid(const Population& pop);

using SignalRow = std::array<double, kSignalCount>;

/// Signal-driven strategy: one position per (type, signal).
class Strategy {
 public:
  Strategy() = default;
  explicit Strategy(std::size_t n_types, double fill = 0.0);
  explicit Strategy(std::vector<SignalRow> rows) : rows_(std::move(rows)) {}

  std::size_t n_types() const { return rows_.size(); }

  double& at(std::size_t type, Signal z) { return rows_.at(type)[index(z)]; }
  double at(std::size_t type, Signal z) const { return rows_.at(type)[index(z)]; }

  SignalRow& row(std::size_t type) { return rows_.at(type); }
  const SignalRow& row(std::size_t type) const { return rows_.at(type); }

  std::span<const SignalRow> rows() const { return rows_; }

  bool operator==(const Strategy&) const = default;

 private:
  std::vector<SignalRow> rows_;
};

class IncompatibleStrategies : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InadmissibleStrategy : public std::invalid_argument {
 public:
  InadmissibleStrategy(std::size_t type, Signal z, double value);
  std::size_t type() const { return type_; }
  Signal signal() const { return signal_; }

 private:
  std::size_t type_;
  Signal signal_;
};

/// Sup-norm distance over all (type, signal) entries.
double strategy_distance(const Strategy& a, const Strategy& b);

/// Throws InadmissibleStrategy for the first entry outside its admissible interval.
void require_admissible(const Population& pop, const Strategy& strat);

bool is_admissible(const Population& pop, const Strategy& strat);

/// Per-type Merton fraction (kappa - r) / (alpha (sigma^2 + sigma0^2)), clipped to the
/// admissible interval, in every signal slot.
Strategy merton_strategy(const Population& pop);

/// The case-study market and reference type (x0, p_s, rho, theta) = (1, 0.5, 0.5, 0.5), alpha = 2.
MarketParams case_study_market();
InvestorType case_study_type(double weight = 0.5);
Population case_study_population();

}  // namespace sigeq
