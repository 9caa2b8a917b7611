#include "sigeq/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sigeq {

std::string_view to_string(Signal z) {
  switch (z) {
    case Signal::MinusInf: return "-inf";
    case Signal::MinusOne: return "-1";
    case Signal::MinusHalf: return "-0.5";
    case Signal::None: return "0";
    case Signal::PlusHalf: return "0.5";
    case Signal::PlusOne: return "1";
    case Signal::PlusInf: return "inf";
  }
  return "?";
}

Signal parse_signal(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  for (Signal z : kAllSignals) {
    if (text == to_string(z)) return z;
  }
  if (text == "-INF" || text == "-Inf") return Signal::MinusInf;
  if (text == "INF" || text == "Inf") return Signal::PlusInf;
  throw ModelError("unknown signal label '" + std::string(text) + "'");
}

AdmissibleInterval Population::interval(std::size_t type, Signal) const {
  if (type >= types.size()) throw ModelError("type index out of range");
  return AdmissibleInterval{0.0, 1.0 - eps_b};
}

namespace {

void check_market(const MarketParams& m, std::ptrdiff_t idx, std::vector<Violation>& out) {
  auto add = [&](std::string msg) { out.push_back({idx, std::move(msg)}); };
  const double fields[] = {m.r, m.kappa, m.sigma, m.sigma0, m.kappa_hat, m.sigma_hat, m.lambda};
  if (!std::all_of(std::begin(fields), std::end(fields), [](double v) { return std::isfinite(v); })) {
    add("market parameters must be finite");
    return;
  }
  if (m.sigma < 0.0) add("sigma must be >= 0");
  if (m.sigma0 < 0.0) add("sigma0 must be >= 0");
  if (!(m.sigma + m.sigma0 > 0.0)) add("sigma + sigma0 must be > 0");
  if (!(m.sigma_hat > 0.0)) add("sigma_hat must be > 0");
  // lambda = 0 is the jump-free limit and stays admissible.
  if (m.lambda < 0.0) add("lambda must be >= 0");
}

}  // namespace

std::vector<Violation> validate_population(const Population& pop) {
  std::vector<Violation> out;
  if (pop.types.empty()) {
    out.push_back({-1, "population needs at least one type"});
    return out;
  }
  if (!(pop.eps_b > 0.0 && pop.eps_b < 1.0)) out.push_back({-1, "eps_b must lie in (0, 1)"});

  double total = 0.0;
  for (std::size_t i = 0; i < pop.types.size(); ++i) {
    const auto& t = pop.types[i];
    const auto idx = static_cast<std::ptrdiff_t>(i);
    auto add = [&](std::string msg) { out.push_back({idx, std::move(msg)}); };
    check_market(t.market, idx, out);
    if (!(t.x0 > 0.0) || !std::isfinite(t.x0)) add("x0 must be > 0");
    if (!(t.p_s >= 0.0 && t.p_s < 1.0)) add("p_s must lie in [0, 1)");
    if (!(std::abs(t.rho) < 1.0)) add("|rho| must be < 1");
    if (!(t.alpha > 0.0) || !std::isfinite(t.alpha)) add("alpha must be > 0");
    if (t.alpha == 1.0) add("alpha != 1 required (log utility is excluded)");
    if (!(t.theta >= 0.0 && t.theta <= 1.0)) add("theta must lie in [0, 1]");
    if (!(t.weight >= 0.0 && t.weight <= 1.0)) add("weight must lie in [0, 1]");
    if (t.market.lambda != pop.types.front().market.lambda) {
      add("all types must share the jump intensity lambda");
    }
    total += t.weight;
  }
  if (!(std::abs(total - 1.0) <= 1e-12)) {
    std::ostringstream os;
    os.precision(17);
    os << "weights sum to " << total << ", expected 1";
    out.push_back({-1, os.str()});
  }
  return out;
}

void require_valid(const Population& pop) {
  const auto violations = validate_population(pop);
  if (violations.empty()) return;
  std::ostringstream os;
  os << "invalid population:";
  for (const auto& v : violations) {
    os << "\n  ";
    if (v.type_index >= 0) os << "type " << v.type_index << ": ";
    os << v.message;
  }
  throw ModelError(os.str());
}

Strategy::Strategy(std::size_t n_types, double fill) : rows_(n_types) {
  for (auto& r : rows_) r.fill(fill);
}

namespace {
std::string inadmissible_message(std::size_t type, Signal z, double value) {
  std::ostringstream os;
  os.precision(17);
  os << "position " << value << " for type " << type << ", signal " << to_string(z)
     << " is outside its admissible interval";
  return os.str();
}
}  // namespace

InadmissibleStrategy::InadmissibleStrategy(std::size_t type, Signal z, double value)
    : std::invalid_argument(inadmissible_message(type, z, value)), type_(type), signal_(z) {}

double strategy_distance(const Strategy& a, const Strategy& b) {
  if (a.n_types() != b.n_types()) {
    throw IncompatibleStrategies("strategies cover " + std::to_string(a.n_types()) + " and " +
                                 std::to_string(b.n_types()) + " types");
  }
  double d = 0.0;
  for (std::size_t t = 0; t < a.n_types(); ++t) {
    for (std::size_t k = 0; k < kSignalCount; ++k) {
      d = std::max(d, std::abs(a.row(t)[k] - b.row(t)[k]));
    }
  }
  return d;
}

void require_admissible(const Population& pop, const Strategy& strat) {
  if (strat.n_types() != pop.size()) {
    throw IncompatibleStrategies("strategy has " + std::to_string(strat.n_types()) +
                                 " rows for a population of " + std::to_string(pop.size()));
  }
  for (std::size_t t = 0; t < pop.size(); ++t) {
    for (Signal z : kAllSignals) {
      const double v = strat.at(t, z);
      if (!pop.interval(t, z).contains(v)) throw InadmissibleStrategy(t, z, v);
    }
  }
}

bool is_admissible(const Population& pop, const Strategy& strat) {
  try {
    require_admissible(pop, strat);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

Strategy merton_strategy(const Population& pop) {
  Strategy s(pop.size());
  for (std::size_t t = 0; t < pop.size(); ++t) {
    const auto& ty = pop.types[t];
    const auto& m = ty.market;
    const double frac = (m.kappa - m.r) / (ty.alpha * (m.sigma * m.sigma + m.sigma0 * m.sigma0));
    for (Signal z : kAllSignals) s.at(t, z) = pop.interval(t, z).clamp(frac);
  }
  return s;
}

MarketParams case_study_market() { return MarketParams{}; }

InvestorType case_study_type(double weight) {
  InvestorType t;
  t.market = case_study_market();
  t.weight = weight;
  return t;
}

Population case_study_population() {
  Population p;
  p.types = {case_study_type(0.5), case_study_type(0.5)};
  return p;
}

}  // namespace sigeq
