#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "banditlab/arms.hpp"

namespace banditlab::harness {

// Declarative description of one study; parsed from a strict JSON file
// (unknown keys rejected, schema documented in the README).
struct ExperimentConfig {
  std::string family;
  std::vector<arms::ArmModel> arm_models;
  arms::SharedModelConfig shared;
  std::vector<std::int64_t> horizons;  // strictly increasing checkpoints
  std::int64_t replications = 0;
  std::uint64_t seed = 0;
  std::string output_path;
  bool oracle_targets = false;  // route 1/M targets through m_oracle
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
void validate(const ExperimentConfig& config);

struct ArmHorizonCell {
  double mean_pulls = 0.0;
  double se_pulls = 0.0;
};

struct ArmCurve {
  bool is_optimal = false;
  std::optional<double> target_inv_m;  // 1/M_{f_i}(s*), suboptimal arms only
  std::optional<double> fitted_slope;  // OLS of mean pulls against ln n
  std::optional<double> slope_se;
  std::vector<ArmHorizonCell> by_horizon;  // parallel to RegretCurve::horizons
};

struct RegretCurve {
  std::string family;
  std::int64_t replications = 0;
  std::uint64_t seed = 0;
  std::vector<std::int64_t> horizons;
  std::vector<ArmCurve> arm_curves;
  // Mean suboptimal-activation count T^o(n) per checkpoint (UF diagnostic).
  std::map<std::int64_t, double> mean_suboptimal;
  bool slope_excludes_smallest = false;  // initial-phase bias guard, see README
};

struct SlopeFit {
  double slope = 0.0;
  double se = 0.0;
};

// Ordinary least squares of y against x over >= 3 points; SE from residuals.
SlopeFit fit_slope(const std::vector<std::pair<double, double>>& points);

// Runs `replications` seeded replications (seed + r), aggregates pull counts
// at every configured horizon, fits slopes, and writes the CSV when the
// config names an output path.  Byte-identical output for any worker count.
RegretCurve run_experiment(const ExperimentConfig& config, int workers = 1);

std::string csv_string(const RegretCurve& curve);
void emit_csv(const RegretCurve& curve, const std::string& path);

// Closed-form index with the CLI's k=v params interpreted as plug-in
// estimates from t pulls at global clock n.
double plugin_index(const std::string& family, const std::map<std::string, double>& params,
                    std::int64_t n, std::int64_t t);

}  // namespace banditlab::harness
