#include "banditlab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "banditlab/engine.hpp"
#include "banditlab/errors.hpp"
#include "banditlab/oracles.hpp"

namespace banditlab::harness {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) {
  throw ValidationError("config: " + message);
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : allowed) {
      if (it.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) fail("unknown key '" + it.key() + "' in " + where);
  }
}

double number_field(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) fail("missing key '" + std::string(key) + "' in " + where);
  const json& value = obj.at(key);
  if (!value.is_number()) {
    fail("key '" + std::string(key) + "' in " + where + " must be a number");
  }
  return value.get<double>();
}

arms::ArmModel parse_arm(const std::string& family, const json& obj,
                         const std::string& where) {
  if (!obj.is_object()) fail(where + " must be an object");
  if (family == "pareto_mean" || family == "pareto_tail" || family == "pareto_median") {
    reject_unknown_keys(obj, {"alpha", "beta"}, where);
    pareto::SeparableScore score = family == "pareto_mean"
                                       ? pareto::SeparableScore::mean_score()
                                   : family == "pareto_tail"
                                       ? pareto::SeparableScore::tail_exponent_score()
                                       : pareto::SeparableScore::median_score();
    pareto::ParetoParams params{number_field(obj, "alpha", where),
                                number_field(obj, "beta", where), score.floor_l()};
    return arms::ParetoArm{params, std::move(score)};
  }
  if (family == "coverage") {
    reject_unknown_keys(obj, {"intervals"}, where);
    if (!obj.contains("intervals") || !obj.at("intervals").is_array()) {
      fail(where + " needs an 'intervals' array");
    }
    std::vector<coverage::Interval> parts;
    for (const json& pair : obj.at("intervals")) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
          !pair[1].is_number()) {
        fail("each entry of 'intervals' in " + where + " must be [lo, hi]");
      }
      parts.push_back({pair[0].get<double>(), pair[1].get<double>()});
    }
    return arms::CoverageArm{coverage::SupportSet(std::move(parts))};
  }
  if (family == "interval") {
    reject_unknown_keys(obj, {"low", "high"}, where);
    interval::IntervalParams params{number_field(obj, "low", where),
                                    number_field(obj, "high", where)};
    return arms::IntervalArm{params, interval::MonotoneScore2D::mean_score()};
  }
  if (family == "normal_chk" || family == "normal_var") {
    reject_unknown_keys(obj, {"mu", "sigma"}, where);
    double mu = (family == "normal_var" && !obj.contains("mu"))
                    ? 0.0
                    : number_field(obj, "mu", where);
    normal::NormalParams params{mu, number_field(obj, "sigma", where)};
    if (family == "normal_chk") return arms::NormalChkArm{params};
    return arms::NormalVarArm{params};
  }
  if (family == "normal_thr") {
    reject_unknown_keys(obj, {"mu", "sigma"}, where);
    return arms::NormalThrArm{number_field(obj, "mu", where),
                              number_field(obj, "sigma", where)};
  }
  fail("unknown family '" + family + "'");
}

std::string format_g9(double value) {
  char buffer[48];
  std::snprintf(buffer, sizeof buffer, "%.9g", value);
  return buffer;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) fail("top level must be an object");
  reject_unknown_keys(root,
                      {"family", "arms", "horizons", "replications", "seed",
                       "output_path", "oracle_targets", "kappa", "d_schedule"},
                      "top level");

  ExperimentConfig config;
  if (!root.contains("family") || !root.at("family").is_string()) {
    fail("'family' must be a string");
  }
  config.family = root.at("family").get<std::string>();

  if (!root.contains("arms") || !root.at("arms").is_array()) {
    fail("'arms' must be an array");
  }
  std::size_t arm_number = 1;
  for (const json& arm : root.at("arms")) {
    config.arm_models.push_back(
        parse_arm(config.family, arm, "arms[" + std::to_string(arm_number) + "]"));
    ++arm_number;
  }

  if (!root.contains("horizons") || !root.at("horizons").is_array()) {
    fail("'horizons' must be an array of integers");
  }
  for (const json& h : root.at("horizons")) {
    if (!h.is_number_integer() && !h.is_number_unsigned()) {
      fail("'horizons' entries must be integers");
    }
    config.horizons.push_back(h.get<std::int64_t>());
  }

  if (!root.contains("replications") ||
      (!root.at("replications").is_number_integer() &&
       !root.at("replications").is_number_unsigned())) {
    fail("'replications' must be an integer");
  }
  config.replications = root.at("replications").get<std::int64_t>();

  if (!root.contains("seed")) fail("missing key 'seed' in top level");
  const json& seed = root.at("seed");
  if (seed.is_number_unsigned()) {
    config.seed = seed.get<std::uint64_t>();
  } else if (seed.is_number_integer() && seed.get<std::int64_t>() >= 0) {
    config.seed = static_cast<std::uint64_t>(seed.get<std::int64_t>());
  } else {
    fail("'seed' must be a nonnegative integer");
  }

  if (root.contains("output_path")) {
    if (!root.at("output_path").is_string()) fail("'output_path' must be a string");
    config.output_path = root.at("output_path").get<std::string>();
  }
  if (root.contains("oracle_targets")) {
    if (!root.at("oracle_targets").is_boolean()) fail("'oracle_targets' must be a boolean");
    config.oracle_targets = root.at("oracle_targets").get<bool>();
  }
  if (root.contains("kappa")) {
    if (config.family != "normal_thr") fail("'kappa' only applies to normal_thr");
    if (!root.at("kappa").is_number()) fail("'kappa' must be a number");
    config.shared.kappa = root.at("kappa").get<double>();
  }
  if (root.contains("d_schedule")) {
    if (config.family != "coverage") fail("'d_schedule' only applies to coverage");
    if (!root.at("d_schedule").is_string()) fail("'d_schedule' must be a string");
    std::string name = root.at("d_schedule").get<std::string>();
    if (name == "sqrt") {
      config.shared.d_schedule = coverage::PartitionSchedule::sqrt_schedule();
    } else if (name == "log2") {
      config.shared.d_schedule = coverage::PartitionSchedule::log2_schedule();
    } else {
      fail("'d_schedule' must be \"sqrt\" or \"log2\"");
    }
  }
  if (config.family == "normal_thr" && !config.shared.kappa.has_value()) {
    fail("normal_thr requires 'kappa'");
  }
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("config: cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

void validate(const ExperimentConfig& config) {
  if (config.arm_models.size() < 2) fail("need at least 2 arms");
  if (config.horizons.empty()) fail("'horizons' must be nonempty");
  for (std::size_t i = 0; i < config.horizons.size(); ++i) {
    if (config.horizons[i] < 1) fail("'horizons' entries must be positive");
    if (i > 0 && config.horizons[i] <= config.horizons[i - 1]) {
      fail("'horizons' must be strictly increasing");
    }
  }
  if (config.replications < 1) fail("'replications' must be positive");
  // Family-level checks (score homogeneity, parameter validity, kappa).
  auto policy = arms::make_policy(config.arm_models, config.shared);
  std::int64_t initial_rounds =
      policy->initial_pulls() * static_cast<std::int64_t>(policy->arm_count());
  if (config.horizons.back() < initial_rounds) {
    fail("largest horizon is shorter than the initial phase n0*N = " +
         std::to_string(initial_rounds));
  }
}

SlopeFit fit_slope(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw ValidationError("fit_slope: need at least 3 points");
  double n = static_cast<double>(points.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (const auto& [x, y] : points) {
    mean_x += x;
    mean_y += y;
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : points) {
    sxx += (x - mean_x) * (x - mean_x);
    sxy += (x - mean_x) * (y - mean_y);
  }
  if (!(sxx > 0.0)) throw ValidationError("fit_slope: abscissae are all equal");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  double intercept = mean_y - fit.slope * mean_x;
  double ssr = 0.0;
  for (const auto& [x, y] : points) {
    double residual = y - (intercept + fit.slope * x);
    ssr += residual * residual;
  }
  fit.se = std::sqrt(ssr / (n - 2.0) / sxx);
  return fit;
}

RegretCurve run_experiment(const ExperimentConfig& config, int workers) {
  validate(config);
  auto policy = arms::make_policy(config.arm_models, config.shared);
  const std::size_t n_arms = policy->arm_count();
  const std::size_t n_h = config.horizons.size();
  const std::int64_t reps = config.replications;
  const std::int64_t max_horizon = config.horizons.back();

  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n_arms; ++i) {
    best_score = std::max(best_score, policy->true_score(i));
  }
  std::vector<char> optimal(n_arms);
  for (std::size_t i = 0; i < n_arms; ++i) {
    optimal[i] = (policy->true_score(i) == best_score);
  }

  // One slot per (replication, arm, horizon); slots are written by exactly
  // one worker and reduced in replication order, so any worker count yields
  // identical aggregates.
  std::vector<std::int64_t> pull_slab(static_cast<std::size_t>(reps) * n_arms * n_h, 0);
  std::vector<std::int64_t> subopt_slab(static_cast<std::size_t>(reps) * n_h, 0);

  std::atomic<std::int64_t> next_replication{0};
  std::exception_ptr first_error = nullptr;
  std::mutex error_mutex;

  auto replicate = [&]() {
    std::vector<std::int64_t> counts(n_arms);
    for (;;) {
      std::int64_t r = next_replication.fetch_add(1, std::memory_order_relaxed);
      if (r >= reps) return;
      try {
        engine::Trace trace = engine::run_horizon(
            *policy, max_horizon, config.seed + static_cast<std::uint64_t>(r));
        std::fill(counts.begin(), counts.end(), 0);
        std::int64_t suboptimal = 0;
        std::size_t h = 0;
        for (std::int64_t round = 1; round <= max_horizon && h < n_h; ++round) {
          auto arm = static_cast<std::size_t>(trace.selections[static_cast<std::size_t>(round - 1)]);
          counts[arm] += 1;
          if (!optimal[arm]) ++suboptimal;
          if (round == config.horizons[h]) {
            for (std::size_t i = 0; i < n_arms; ++i) {
              pull_slab[(static_cast<std::size_t>(r) * n_arms + i) * n_h + h] = counts[i];
            }
            subopt_slab[static_cast<std::size_t>(r) * n_h + h] = suboptimal;
            ++h;
          }
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  int thread_count = 1;
  if (workers > 1) {
    thread_count = static_cast<int>(
        std::min<std::int64_t>(workers, std::max<std::int64_t>(reps, 1)));
  }
  if (thread_count <= 1) {
    replicate();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(thread_count));
    for (int w = 0; w < thread_count; ++w) pool.emplace_back(replicate);
    for (std::thread& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  RegretCurve curve;
  curve.family = policy->family_name();
  curve.replications = reps;
  curve.seed = config.seed;
  curve.horizons = config.horizons;
  curve.arm_curves.resize(n_arms);

  double reps_d = static_cast<double>(reps);
  for (std::size_t i = 0; i < n_arms; ++i) {
    ArmCurve& arm_curve = curve.arm_curves[i];
    arm_curve.is_optimal = optimal[i] != 0;
    arm_curve.by_horizon.resize(n_h);
    for (std::size_t h = 0; h < n_h; ++h) {
      double mean = 0.0;
      for (std::int64_t r = 0; r < reps; ++r) {
        mean += static_cast<double>(
            pull_slab[(static_cast<std::size_t>(r) * n_arms + i) * n_h + h]);
      }
      mean /= reps_d;
      double ss = 0.0;
      for (std::int64_t r = 0; r < reps; ++r) {
        double d = static_cast<double>(
                       pull_slab[(static_cast<std::size_t>(r) * n_arms + i) * n_h + h]) -
                   mean;
        ss += d * d;
      }
      arm_curve.by_horizon[h].mean_pulls = mean;
      arm_curve.by_horizon[h].se_pulls =
          reps > 1 ? std::sqrt(ss / (reps_d - 1.0) / reps_d) : 0.0;
    }
  }

  for (std::size_t h = 0; h < n_h; ++h) {
    double mean = 0.0;
    for (std::int64_t r = 0; r < reps; ++r) {
      mean += static_cast<double>(subopt_slab[static_cast<std::size_t>(r) * n_h + h]);
    }
    curve.mean_suboptimal[config.horizons[h]] = mean / reps_d;
  }

  for (std::size_t i = 0; i < n_arms; ++i) {
    if (optimal[i]) continue;
    double floor = config.oracle_targets
                       ? oracles::m_oracle(config.arm_models[i], best_score, config.shared)
                       : policy->divergence_floor(i, best_score);
    if (!(floor > 0.0) || !std::isfinite(floor)) {
      throw ValidationError(
          "run_experiment: divergence floor is not positive for suboptimal arm " +
          std::to_string(i + 1) + " (two arms may share the optimal score)");
    }
    curve.arm_curves[i].target_inv_m = 1.0 / floor;
  }

  std::int64_t initial_rounds =
      policy->initial_pulls() * static_cast<std::int64_t>(n_arms);
  bool exclude_smallest = initial_rounds > 100 && n_h >= 4;
  curve.slope_excludes_smallest = exclude_smallest;
  if (n_h >= 3) {
    for (std::size_t i = 0; i < n_arms; ++i) {
      if (curve.arm_curves[i].is_optimal) continue;
      std::vector<std::pair<double, double>> points;
      for (std::size_t h = exclude_smallest ? 1 : 0; h < n_h; ++h) {
        points.emplace_back(std::log(static_cast<double>(config.horizons[h])),
                            curve.arm_curves[i].by_horizon[h].mean_pulls);
      }
      SlopeFit fit = fit_slope(points);
      curve.arm_curves[i].fitted_slope = fit.slope;
      curve.arm_curves[i].slope_se = fit.se;
    }
  }

  if (!config.output_path.empty()) emit_csv(curve, config.output_path);
  return curve;
}

std::string csv_string(const RegretCurve& curve) {
  std::string out =
      "arm,horizon,mean_pulls,se_pulls,is_optimal,target_inv_M,fitted_slope,slope_se\n";
  for (std::size_t i = 0; i < curve.arm_curves.size(); ++i) {
    const ArmCurve& arm_curve = curve.arm_curves[i];
    for (std::size_t h = 0; h < curve.horizons.size(); ++h) {
      out += std::to_string(i + 1);
      out += ',';
      out += std::to_string(curve.horizons[h]);
      out += ',';
      out += format_g9(arm_curve.by_horizon[h].mean_pulls);
      out += ',';
      out += format_g9(arm_curve.by_horizon[h].se_pulls);
      out += ',';
      out += arm_curve.is_optimal ? '1' : '0';
      out += ',';
      if (arm_curve.target_inv_m) out += format_g9(*arm_curve.target_inv_m);
      out += ',';
      if (arm_curve.fitted_slope) out += format_g9(*arm_curve.fitted_slope);
      out += ',';
      if (arm_curve.slope_se) out += format_g9(*arm_curve.slope_se);
      out += '\n';
    }
  }
  out += "# family=" + curve.family + " replications=" + std::to_string(curve.replications) +
         " seed=" + std::to_string(curve.seed) +
         " slope_excludes_smallest=" + (curve.slope_excludes_smallest ? "1" : "0") + "\n";
  return out;
}

void emit_csv(const RegretCurve& curve, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("emit_csv: cannot open '" + path + "' for writing");
  out << csv_string(curve);
  out.flush();
  if (!out) throw ValidationError("emit_csv: failed writing '" + path + "'");
}

double plugin_index(const std::string& family, const std::map<std::string, double>& params,
                    std::int64_t n, std::int64_t t) {
  auto need = [&](const char* key) {
    auto it = params.find(key);
    if (it == params.end()) {
      throw ValidationError("index-table: missing param '" + std::string(key) + "'");
    }
    return it->second;
  };
  auto restrict_keys = [&](std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : params) {
      (void)value;
      bool known = false;
      for (const char* k : allowed) {
        if (key == k) {
          known = true;
          break;
        }
      }
      if (!known) throw ValidationError("index-table: unknown param '" + key + "'");
    }
  };

  if (family == "pareto_mean" || family == "pareto_tail" || family == "pareto_median") {
    restrict_keys({"alpha", "beta"});
    pareto::SeparableScore score = family == "pareto_mean"
                                       ? pareto::SeparableScore::mean_score()
                                   : family == "pareto_tail"
                                       ? pareto::SeparableScore::tail_exponent_score()
                                       : pareto::SeparableScore::median_score();
    pareto::ParetoParams plug{need("alpha"), need("beta"), score.floor_l()};
    pareto::validate(plug);
    if (t < 2) throw ValidationError("index-table: pareto needs t >= 2");
    pareto::ParetoStats stats{t, plug.beta, static_cast<double>(t - 1) / plug.alpha};
    return pareto::index(stats, n, score);
  }
  if (family == "coverage") {
    restrict_keys({"measure", "d_log2"});
    double measure = need("measure");
    if (!(measure > 0.0 && measure < 1.0)) {
      throw ValidationError("index-table: coverage measure must lie strictly in (0,1)");
    }
    auto it = params.find("d_log2");
    coverage::PartitionSchedule schedule = (it != params.end() && it->second != 0.0)
                                               ? coverage::PartitionSchedule::log2_schedule()
                                               : coverage::PartitionSchedule::sqrt_schedule();
    return coverage::index_from_measure(measure, t, n, schedule);
  }
  if (family == "interval") {
    restrict_keys({"low", "high"});
    interval::IntervalParams plug{need("low"), need("high")};
    interval::validate(plug);
    interval::IntervalStats stats{t, plug.low, plug.high};
    return interval::index(stats, n, interval::MonotoneScore2D::mean_score());
  }
  if (family == "normal_chk" || family == "normal_var") {
    restrict_keys({"mu", "sigma"});
    double mu = (family == "normal_var" && params.find("mu") == params.end())
                    ? 0.0
                    : need("mu");
    normal::NormalParams plug{mu, need("sigma")};
    normal::validate(plug);
    normal::NormalStats stats{t, plug.mu,
                              plug.sigma * plug.sigma * static_cast<double>(t - 1)};
    return family == "normal_chk" ? normal::index_chk(stats, n)
                                  : normal::index_var(stats, n);
  }
  if (family == "normal_thr") {
    restrict_keys({"mu", "sigma", "kappa"});
    normal::NormalParams plug{need("mu"), need("sigma")};
    normal::validate(plug);
    normal::NormalStats stats{t, plug.mu, 0.0};
    return normal::index_threshold(stats, n, {need("kappa"), plug.sigma});
  }
  throw ValidationError("index-table: unknown family '" + family + "'");
}

}  // namespace banditlab::harness
