#include "sigeq/response.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sigeq {

namespace {

// Jump sizes below this leave every signal target flat to rounding.
constexpr double kFlatJump = 1e-12;

void require_stats_on_grid(const MeanFieldStats& stats, const Quadrature& q) {
  if (stats.log_mean_jump.size() != q.size()) {
    throw ModelError("mean-field statistic was tabulated on a different quadrature grid");
  }
}

void fill_signal_probs(TargetContext& ctx, const Quadrature& q) {
  ctx.signal_prob.fill(0.0);
  for (Signal z : kNonzeroSignals) ctx.signal_prob[index(z)] = q.signal_probability(z, ctx.type.rho);
}

double check_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw std::domain_error(std::string(what) + " is not finite");
  return v;
}

}  // namespace

TargetContext make_mf_context(const InvestorType& type, const MeanFieldStats& stats,
                              const Quadrature& q) {
  require_stats_on_grid(stats, q);
  TargetContext ctx;
  ctx.mode = TargetContext::Mode::MeanField;
  ctx.type = type;
  ctx.quad = &q;
  ctx.peer_vol = stats.sigma0pi_bar;
  ctx.peer_drift = stats.taupi_bar;
  ctx.peer_idio = 0.0;
  const double scale = -type.theta * (1.0 - type.alpha);
  ctx.log_g.resize(q.size());
  for (std::size_t k = 0; k < q.size(); ++k) ctx.log_g[k] = scale * stats.log_mean_jump[k];
  ctx.kernel = TypeKernel::build(type, q);
  fill_signal_probs(ctx, q);
  return ctx;
}

TargetContext make_nagent_context(std::size_t i, std::span<const InvestorType> players,
                                  const Strategy& strat, const Quadrature& q) {
  if (players.size() < 2) throw ModelError("an n-agent game needs at least two players");
  if (i >= players.size()) throw ModelError("player index out of range");
  if (strat.n_types() != players.size()) {
    throw IncompatibleStrategies("strategy rows do not match the number of players");
  }
  const auto& me = players[i];
  const double n = static_cast<double>(players.size() - 1);
  const double a = -me.theta * (1.0 - me.alpha) / n;

  TargetContext ctx;
  ctx.mode = TargetContext::Mode::NAgent;
  ctx.type = me;
  ctx.quad = &q;
  ctx.log_g.assign(q.size(), 0.0);
  for (std::size_t j = 0; j < players.size(); ++j) {
    if (j == i) continue;
    const auto& pj = players[j];
    const auto& m = pj.market;
    const double p0 = strat.at(j, Signal::None);
    ctx.peer_vol += m.sigma0 * p0 / n;
    ctx.peer_drift +=
        (m.r + p0 * (m.kappa - m.r) - 0.5 * (m.sigma * m.sigma + m.sigma0 * m.sigma0) * p0 * p0) / n;
    ctx.peer_idio += m.sigma * m.sigma * p0 * p0 / (n * n);
    if (a == 0.0) continue;
    const TypeKernel kj = TypeKernel::build(pj, q);
    for (std::size_t k = 0; k < q.size(); ++k) {
      const double e = kj.eta[k];
      double received = 0.0;
      for (Signal z : kNonzeroSignals) {
        received += kj.cond[index(z)][k] * std::expm1(a * std::log1p(strat.at(j, z) * e));
      }
      // The conditional signal law sums to one, so work with moment - 1.
      const double excess =
          (1.0 - pj.p_s) * std::expm1(a * std::log1p(p0 * e)) + pj.p_s * received;
      ctx.log_g[k] += std::log1p(excess);
    }
  }
  ctx.kernel = TypeKernel::build(me, q);
  fill_signal_probs(ctx, q);
  return ctx;
}

double jump_utility(const TargetContext& ctx, double phi, std::size_t k) {
  const double q = ctx.q();
  return std::expm1(q * std::log1p(phi * ctx.kernel.eta[k]) + ctx.log_g[k]) / q;
}

double target_no_signal(double phi, const TargetContext& ctx) {
  const auto& t = ctx.type;
  const auto& m = t.market;
  const double var = m.sigma * m.sigma + m.sigma0 * m.sigma0;
  const auto w = ctx.quad->weights();
  double jumps = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) jumps += w[k] * jump_utility(ctx, phi, k);
  const double v = phi * (m.kappa - m.r) - 0.5 * t.alpha * phi * phi * var -
                   t.theta * ctx.q() * m.sigma0 * phi * ctx.peer_vol +
                   m.lambda * (1.0 - t.p_s) * jumps;
  return check_finite(v, "no-signal target");
}

double target_signal(double phi, Signal z, const TargetContext& ctx) {
  if (z == Signal::None) throw ModelError("target_signal needs a nonzero signal");
  const double pz = ctx.signal_prob[index(z)];
  if (pz <= 0.0) return 0.0;
  const auto& c = ctx.kernel.cond[index(z)];
  const auto w = ctx.quad->weights();
  double acc = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) acc += w[k] * jump_utility(ctx, phi, k) * c[k];
  return check_finite(acc / pz, "signal target");
}

double target_slope(double phi, Signal z, const TargetContext& ctx) {
  const auto& t = ctx.type;
  const auto& m = t.market;
  const auto w = ctx.quad->weights();
  const auto& eta = ctx.kernel.eta;
  auto marginal = [&](std::size_t k) {
    return eta[k] * std::exp(-t.alpha * std::log1p(phi * eta[k]) + ctx.log_g[k]);
  };
  if (z == Signal::None) {
    double jumps = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) jumps += w[k] * marginal(k);
    const double var = m.sigma * m.sigma + m.sigma0 * m.sigma0;
    return (m.kappa - m.r) - t.alpha * phi * var - t.theta * ctx.q() * m.sigma0 * ctx.peer_vol +
           m.lambda * (1.0 - t.p_s) * jumps;
  }
  const double pz = ctx.signal_prob[index(z)];
  if (pz <= 0.0) return 0.0;
  const auto& c = ctx.kernel.cond[index(z)];
  double acc = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) acc += w[k] * marginal(k) * c[k];
  return acc / pz;
}

bool signal_degenerate(Signal z, const TargetContext& ctx) {
  const auto& t = ctx.type;
  if (!(t.market.lambda * t.p_s * ctx.signal_prob[index(z)] > 0.0)) return true;
  const auto& eta = ctx.kernel.eta;
  const double biggest = std::transform_reduce(
      eta.begin(), eta.end(), 0.0, [](double a, double b) { return std::max(a, b); },
      [](double e) { return std::abs(e); });
  return biggest <= kFlatJump;
}

Maximum maximize_concave_1d(const std::function<double(double)>& f, AdmissibleInterval iv,
                            double tol) {
  if (!(tol > 0.0)) throw ModelError("tolerance must be positive");
  auto eval = [&](double x) { return check_finite(f(x), "objective"); };
  if (iv.hi <= iv.lo) return {iv.lo, eval(iv.lo)};

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = iv.lo;
  double b = iv.hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = eval(x1);
  double f2 = eval(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = eval(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = eval(x1);
    }
  }

  Maximum best = f1 >= f2 ? Maximum{x1, f1} : Maximum{x2, f2};
  const double fa = eval(a);
  const double fb = eval(b);
  // Near the top the values are flat to rounding, so refine with a parabola
  // through a wider stencil and keep it when it is as good up to rounding.
  const double h = std::min(1e-4, 0.5 * (iv.hi - iv.lo));
  const double xm = std::clamp(best.argmax, iv.lo + h, iv.hi - h);
  const double fl = eval(xm - h), fm = eval(xm), fr = eval(xm + h);
  const double curv = fl - 2.0 * fm + fr;
  if (curv < 0.0) {
    const double xp = xm + 0.5 * h * (fl - fr) / curv;
    if (std::isfinite(xp) && xp >= iv.lo && xp <= iv.hi) {
      const double fp = eval(xp);
      const double noise = 8.0 * std::numeric_limits<double>::epsilon() * std::abs(best.value);
      if (fp >= best.value - noise) best = {xp, fp};
    }
  }
  if (fa > best.value) best = {a, fa};
  if (fb > best.value) best = {b, fb};
  const double flo = eval(iv.lo);
  const double fhi = eval(iv.hi);
  if (flo > best.value) best = {iv.lo, flo};
  if (fhi > best.value) best = {iv.hi, fhi};
  return best;
}

double maximize_by_slope(const std::function<double(double)>& slope, AdmissibleInterval iv,
                         double tol) {
  if (iv.hi <= iv.lo) return iv.lo;
  if (check_finite(slope(iv.lo), "slope") <= 0.0) return iv.lo;
  if (check_finite(slope(iv.hi), "slope") >= 0.0) return iv.hi;
  double a = iv.lo;
  double b = iv.hi;
  while (b - a > tol) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const double s = check_finite(slope(mid), "slope");
    if (s > 0.0) {
      a = mid;
    } else if (s < 0.0) {
      b = mid;
    } else {
      return mid;
    }
  }
  return 0.5 * (a + b);
}

SignalRow best_row(const TargetContext& ctx, const Population& pop, std::size_t type_index) {
  SignalRow row{};
  const auto iv0 = pop.interval(type_index, Signal::None);
  const double phi0 =
      maximize_by_slope([&](double p) { return target_slope(p, Signal::None, ctx); }, iv0);
  row[index(Signal::None)] = phi0;
  for (Signal z : kNonzeroSignals) {
    const auto iv = pop.interval(type_index, z);
    if (signal_degenerate(z, ctx)) {
      row[index(z)] = iv.clamp(phi0);
    } else {
      row[index(z)] = maximize_by_slope([&](double p) { return target_slope(p, z, ctx); }, iv);
    }
  }
  return row;
}

Strategy best_response(const Population& pop, const MeanFieldStats& stats, const Quadrature& q) {
  Strategy out(pop.size());
  for (std::size_t t = 0; t < pop.size(); ++t) {
    const TargetContext ctx = make_mf_context(pop.types[t], stats, q);
    out.row(t) = best_row(ctx, pop, t);
  }
  return out;
}

Strategy best_response(const Population& pop, const Strategy& env, const Quadrature& q) {
  return best_response(pop, aggregate(pop, env, q), q);
}

Strategy best_response_nagent(const Population& players, const Strategy& strat,
                              const Quadrature& q) {
  require_admissible(players, strat);
  Strategy out(players.size());
  for (std::size_t i = 0; i < players.size(); ++i) {
    const TargetContext ctx = make_nagent_context(i, players.types, strat, q);
    out.row(i) = best_row(ctx, players, i);
  }
  return out;
}

}  // namespace sigeq
