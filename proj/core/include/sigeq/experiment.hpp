#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "sigeq/equilibrium.hpp"
#include "sigeq/model.hpp"

namespace sigeq {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two-type certainty-equivalent experiment: Type A keeps its reference characteristics
/// while one Type B parameter is swept.
struct ExperimentConfig {
  MarketParams market{};
  double horizon = 1.0;
  double eps_b = kDefaultEpsB;
  InvestorType ref_a = case_study_type(0.5);
  InvestorType ref_b = case_study_type(0.5);
  InvestorType alt_b = case_study_type(0.5);  // ref_b with the alternative overrides
  std::string sweep_parameter = "p_s_B";
  std::vector<double> sweep_values{0.0, 0.25, 0.5, 0.75, 0.999};
  SolverConfig solver{};
  std::size_t nodes = 128;
  double half_width = 8.0;
  std::size_t mc_paths = 100000;
  std::uint64_t seed = 1;
};

/// Parses JSON text; missing blocks and fields keep the case-study defaults.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

Population reference_population(const ExperimentConfig& cfg);
/// Alternative environment with the sweep parameter of Type B set to `value`.
Population alternative_population(const ExperimentConfig& cfg, double value);

struct ExperimentRow {
  std::string sweep_parameter;
  double sweep_value = 0.0;
  double ce = 0.0;
  double residual_ref = 0.0;
  double residual_alt = 0.0;
  int iterations = 0;
  double m_a_ref = 0.0;
  double m_a_alt = 0.0;
  bool converged = false;
};

struct ExperimentTable {
  std::vector<ExperimentRow> rows;
  bool all_converged() const;
};

/// Solves the reference equilibrium once, then one alternative equilibrium per grid value.
ExperimentTable run_experiment(const ExperimentConfig& cfg);

void write_csv(const ExperimentTable& table, std::ostream& os);
/// Throws std::runtime_error naming the path on IO failure.
void emit_csv(const ExperimentTable& table, const std::filesystem::path& path);

}  // namespace sigeq
