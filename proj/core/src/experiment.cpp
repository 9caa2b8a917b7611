#include "sigeq/experiment.hpp"

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "sigeq/metrics.hpp"

namespace sigeq {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const char* block, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) throw ConfigError(std::string("block '") + block + "' must be an object");
  for (const auto& [k, _] : obj.items()) {
    bool known = false;
    for (const char* key : keys) known = known || k == key;
    if (!known) throw ConfigError("unknown key '" + k + "' in block '" + block + "'");
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

void read_market(const json& j, MarketParams& m) {
  reject_unknown(j, "market", {"r", "kappa", "sigma", "sigma0", "kappa_hat", "sigma_hat", "lambda"});
  read(j, "r", m.r);
  read(j, "kappa", m.kappa);
  read(j, "sigma", m.sigma);
  read(j, "sigma0", m.sigma0);
  read(j, "kappa_hat", m.kappa_hat);
  read(j, "sigma_hat", m.sigma_hat);
  read(j, "lambda", m.lambda);
}

void read_type(const json& j, const char* block, InvestorType& t) {
  reject_unknown(j, block, {"x0", "p_s", "rho", "theta", "alpha", "weight"});
  read(j, "x0", t.x0);
  read(j, "p_s", t.p_s);
  read(j, "rho", t.rho);
  read(j, "theta", t.theta);
  read(j, "alpha", t.alpha);
  read(j, "weight", t.weight);
}

InitKind parse_init(const std::string& s) {
  if (s == "zeros") return InitKind::Zeros;
  if (s == "merton") return InitKind::Merton;
  throw ConfigError("solver.init must be 'zeros' or 'merton', got '" + s + "'");
}

double& sweep_slot(InvestorType& b, const std::string& param) {
  if (param == "p_s_B") return b.p_s;
  if (param == "rho_B") return b.rho;
  if (param == "theta_B") return b.theta;
  throw ConfigError("sweep parameter must be one of p_s_B, rho_B, theta_B; got '" + param + "'");
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown(root, "config", {"market", "horizon", "eps_b", "reference", "alternative",
                                  "sweep", "solver", "quadrature", "mc"});
  ExperimentConfig cfg;
  if (root.contains("market")) read_market(root["market"], cfg.market);
  read(root, "horizon", cfg.horizon);
  read(root, "eps_b", cfg.eps_b);
  if (root.contains("reference")) {
    const auto& ref = root["reference"];
    reject_unknown(ref, "reference", {"A", "B"});
    if (ref.contains("A")) read_type(ref["A"], "reference.A", cfg.ref_a);
    if (ref.contains("B")) read_type(ref["B"], "reference.B", cfg.ref_b);
  }
  cfg.ref_a.market = cfg.market;
  cfg.ref_b.market = cfg.market;
  cfg.alt_b = cfg.ref_b;
  if (root.contains("alternative")) {
    const auto& alt = root["alternative"];
    reject_unknown(alt, "alternative", {"B"});
    if (alt.contains("B")) read_type(alt["B"], "alternative.B", cfg.alt_b);
  }
  if (root.contains("sweep")) {
    const auto& sw = root["sweep"];
    reject_unknown(sw, "sweep", {"parameter", "values"});
    read(sw, "parameter", cfg.sweep_parameter);
    read(sw, "values", cfg.sweep_values);
  }
  InvestorType probe = cfg.alt_b;
  (void)sweep_slot(probe, cfg.sweep_parameter);
  if (root.contains("solver")) {
    const auto& s = root["solver"];
    reject_unknown(s, "solver", {"tol", "max_iter", "damping", "init"});
    read(s, "tol", cfg.solver.tol);
    read(s, "max_iter", cfg.solver.max_iter);
    read(s, "damping", cfg.solver.damping);
    std::string init = "zeros";
    read(s, "init", init);
    cfg.solver.init = parse_init(init);
  }
  if (root.contains("quadrature")) {
    const auto& q = root["quadrature"];
    reject_unknown(q, "quadrature", {"nodes", "L"});
    read(q, "nodes", cfg.nodes);
    read(q, "L", cfg.half_width);
  }
  if (root.contains("mc")) {
    const auto& mc = root["mc"];
    reject_unknown(mc, "mc", {"n_paths", "seed"});
    read(mc, "n_paths", cfg.mc_paths);
    read(mc, "seed", cfg.seed);
  }
  cfg.solver.horizon = cfg.horizon;
  try {
    require_valid(reference_population(cfg));
    for (double v : cfg.sweep_values) require_valid(alternative_population(cfg, v));
  } catch (const ModelError& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

Population reference_population(const ExperimentConfig& cfg) {
  Population p;
  p.eps_b = cfg.eps_b;
  p.types = {cfg.ref_a, cfg.ref_b};
  return p;
}

Population alternative_population(const ExperimentConfig& cfg, double value) {
  Population p;
  p.eps_b = cfg.eps_b;
  InvestorType b = cfg.alt_b;
  sweep_slot(b, cfg.sweep_parameter) = value;
  p.types = {cfg.ref_a, b};
  return p;
}

bool ExperimentTable::all_converged() const {
  for (const auto& r : rows) {
    if (!r.converged) return false;
  }
  return true;
}

ExperimentTable run_experiment(const ExperimentConfig& cfg) {
  const Quadrature q = Quadrature::gauss_legendre_normal(cfg.nodes, cfg.half_width);
  const EquilibriumResult ref = solve_mf_finite(reference_population(cfg), q, cfg.solver);
  ExperimentTable table;
  for (double v : cfg.sweep_values) {
    const EquilibriumResult alt = solve_mf_finite(alternative_population(cfg, v), q, cfg.solver);
    ExperimentRow row;
    row.sweep_parameter = cfg.sweep_parameter;
    row.sweep_value = v;
    row.m_a_ref = ref.per_type_M.front();
    row.m_a_alt = alt.per_type_M.front();
    row.ce = certainty_equivalent(row.m_a_alt, row.m_a_ref);
    row.residual_ref = ref.residual;
    row.residual_alt = alt.residual;
    row.iterations = alt.iterations;
    row.converged = ref.converged && alt.converged;
    table.rows.push_back(row);
  }
  return table;
}

void write_csv(const ExperimentTable& table, std::ostream& os) {
  os << "sweep_parameter,sweep_value,ce,residual_ref,residual_alt,iterations,m_a_ref,m_a_alt,"
        "converged\n";
  for (const auto& r : table.rows) {
    os << r.sweep_parameter << ',' << fmt(r.sweep_value) << ',' << fmt(r.ce) << ','
       << fmt(r.residual_ref) << ',' << fmt(r.residual_alt) << ',' << r.iterations << ','
       << fmt(r.m_a_ref) << ',' << fmt(r.m_a_alt) << ',' << (r.converged ? "true" : "false")
       << '\n';
  }
}

void emit_csv(const ExperimentTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  write_csv(table, out);
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

}  // namespace sigeq
