// End-to-end acceptance checks.  Each criterion prints one [PASS]/[FAIL]
// line; the process exits 0 only if every criterion passes, else 2.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "banditlab/harness.hpp"
#include "banditlab/oracles.hpp"
#include "banditlab/pareto.hpp"
#include "banditlab/rng.hpp"
#include "banditlab/specfun.hpp"

namespace {

using banditlab::Rng;
namespace harness = banditlab::harness;
namespace oracles = banditlab::oracles;
namespace specfun = banditlab::specfun;

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool oracle_equivalence(std::string& detail) {
  const char* families[] = {"pareto_mean", "pareto_tail", "pareto_median", "coverage",
                            "interval",    "normal_chk",  "normal_var",    "normal_thr"};
  auto start = std::chrono::steady_clock::now();
  double max_m = 0.0, max_index = 0.0;
  for (const char* family : families) {
    oracles::OracleCheckResult r = oracles::oracle_self_check(family);
    max_m = std::max(max_m, r.max_m_error);
    max_index = std::max(max_index, r.max_index_error);
  }
  double elapsed = seconds_since(start);
  char buffer[160];
  std::snprintf(buffer, sizeof buffer,
                "max |M error| %.2e (tol 1e-6), max |index error| %.2e (tol 1e-8), %.1f s",
                max_m, max_index, elapsed);
  detail = buffer;
  return max_m <= 1e-6 && max_index <= 1e-8 && elapsed < 120.0;
}

bool range_cdf_monte_carlo(std::string& detail) {
  struct Case {
    std::int64_t t;
    double lambda;
    double expect;
  };
  const Case cases[] = {{5, 0.7, 0.528220}, {2, 0.5, 0.75}};
  const std::int64_t draws = 100000;
  Rng rng(2026);
  bool pass = true;
  double worst_gap_se = 0.0;
  for (const Case& c : cases) {
    double exact = oracles::range_cdf(c.t, c.lambda);
    if (std::abs(exact - c.expect) > 1e-6) pass = false;
    std::int64_t hits = 0;
    for (std::int64_t d = 0; d < draws; ++d) {
      double lo = 1.0, hi = 0.0;
      for (std::int64_t i = 0; i < c.t; ++i) {
        double u = rng.uniform_open();
        lo = std::min(lo, u);
        hi = std::max(hi, u);
      }
      if (hi - lo <= c.lambda) ++hits;
    }
    double emp = static_cast<double>(hits) / static_cast<double>(draws);
    double se = std::sqrt(exact * (1.0 - exact) / static_cast<double>(draws));
    double gap_se = std::abs(emp - exact) / se;
    worst_gap_se = std::max(worst_gap_se, gap_se);
    if (gap_se > 3.0) pass = false;
  }
  char buffer[96];
  std::snprintf(buffer, sizeof buffer, "worst |empirical - exact| = %.2f SE (tol 3 SE)",
                worst_gap_se);
  detail = buffer;
  return pass;
}

bool estimator_distributions(std::string& detail) {
  const std::int64_t draws = 10000, t = 20;
  const double alpha = 2.0, beta = 1.0;
  const banditlab::pareto::ParetoParams truth{alpha, beta, 0.0};
  Rng rng(3);
  std::vector<double> shape_pivot, scale_pivot;
  shape_pivot.reserve(draws);
  scale_pivot.reserve(draws);
  for (std::int64_t d = 0; d < draws; ++d) {
    banditlab::pareto::ParetoStats stats;
    for (std::int64_t i = 0; i < t; ++i) {
      banditlab::pareto::update(stats, banditlab::pareto::quantile(truth, rng.uniform_open()));
    }
    shape_pivot.push_back(alpha * stats.log_sum);
    scale_pivot.push_back(stats.min_sample / beta);
  }
  double ks_shape = oracles::ks_statistic(shape_pivot, [&](double x) {
    return oracles::gamma_cdf(x, static_cast<double>(t - 1));
  });
  double ks_scale = oracles::ks_statistic(scale_pivot, [&](double x) {
    return x <= 1.0 ? 0.0 : 1.0 - std::pow(x, -alpha * static_cast<double>(t));
  });
  double crit = oracles::ks_critical_01(draws);
  double corr = std::abs(oracles::pearson_correlation(shape_pivot, scale_pivot));
  char buffer[128];
  std::snprintf(buffer, sizeof buffer, "KS %.4f/%.4f (crit %.4f), |corr| %.4f (tol 0.05)",
                ks_shape, ks_scale, crit, corr);
  detail = buffer;
  return ks_shape < crit && ks_scale < crit && corr < 0.05;
}

bool chernoff_and_normal_tails(std::string& detail) {
  const std::int64_t draws = 100000;
  Rng rng(4);
  int checked = 0, held = 0;
  // Gamma tails: sums of t unit exponentials against (re^(1-r))^t.
  for (std::int64_t t : {5, 10, 20}) {
    std::vector<double> sums(draws);
    for (std::int64_t d = 0; d < draws; ++d) {
      double sum = 0.0;
      for (std::int64_t i = 0; i < t; ++i) sum -= std::log(rng.uniform_open());
      sums[static_cast<std::size_t>(d)] = sum;
    }
    for (double ratio : {0.5, 0.8, 1.25, 1.5, 2.0}) {
      oracles::Tail tail = ratio <= 1.0 ? oracles::Tail::lower : oracles::Tail::upper;
      std::int64_t hits = 0;
      for (double sum : sums) {
        bool hit = tail == oracles::Tail::lower ? sum <= ratio * static_cast<double>(t)
                                                : sum >= ratio * static_cast<double>(t);
        if (hit) ++hits;
      }
      double emp = static_cast<double>(hits) / static_cast<double>(draws);
      double bound = oracles::chernoff_bound(oracles::BoundKind::gamma, t, ratio, tail);
      ++checked;
      if (emp <= bound) ++held;
    }
  }
  // Chi-square tails: sums of t squared normals against (ue^(1-u))^(t/2).
  for (std::int64_t t : {4, 10}) {
    std::vector<double> sums(draws);
    for (std::int64_t d = 0; d < draws; ++d) {
      double sum = 0.0;
      for (std::int64_t i = 0; i < t; ++i) {
        double z = specfun::norm_quantile(rng.uniform_open());
        sum += z * z;
      }
      sums[static_cast<std::size_t>(d)] = sum;
    }
    for (double ratio : {0.5, 0.8, 1.5, 2.0}) {
      oracles::Tail tail = ratio <= 1.0 ? oracles::Tail::lower : oracles::Tail::upper;
      std::int64_t hits = 0;
      for (double sum : sums) {
        bool hit = tail == oracles::Tail::lower ? sum <= ratio * static_cast<double>(t)
                                                : sum >= ratio * static_cast<double>(t);
        if (hit) ++hits;
      }
      double emp = static_cast<double>(hits) / static_cast<double>(draws);
      double bound = oracles::chernoff_bound(oracles::BoundKind::chi2, t, ratio, tail);
      ++checked;
      if (emp <= bound) ++held;
    }
  }
  // Normal upper tail against (1/2)e^(-z^2/2).
  {
    std::vector<double> zs(draws);
    for (std::int64_t d = 0; d < draws; ++d) {
      zs[static_cast<std::size_t>(d)] = specfun::norm_quantile(rng.uniform_open());
    }
    for (double z : {0.5, 1.0, 2.0, 3.0}) {
      std::int64_t hits = 0;
      for (double draw : zs) {
        if (draw > z) ++hits;
      }
      double emp = static_cast<double>(hits) / static_cast<double>(draws);
      ++checked;
      if (emp <= oracles::normal_tail_bound(z)) ++held;
    }
  }
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%d/%d bounds held", held, checked);
  detail = buffer;
  return held == checked;
}

struct ScenarioResult {
  std::string name;
  harness::RegretCurve curve;
  double target = 0.0;
  double slope = 0.0;
};

std::vector<ScenarioResult> run_slope_scenarios() {
  struct Scenario {
    const char* name;
    const char* config_json;
    double target;  // 1 / M_f(s*) of the suboptimal arm
  };
  const Scenario scenarios[] = {
      {"normal_chk",
       R"({"family":"normal_chk","arms":[{"mu":0.5,"sigma":1.0},{"mu":0.0,"sigma":1.0}],
           "horizons":[1000,10000,100000],"replications":2000,"seed":101})",
       8.96284023544909957},
      {"pareto_tail",
       R"({"family":"pareto_tail","arms":[{"alpha":1.0,"beta":1.0},{"alpha":2.0,"beta":1.0}],
           "horizons":[1000,10000,100000],"replications":2000,"seed":102})",
       5.17739889912417966},
      {"coverage",
       R"({"family":"coverage","arms":[{"intervals":[[0.0,0.8]]},{"intervals":[[0.0,0.5]]}],
           "horizons":[1000,10000,100000],"replications":2000,"seed":103})",
       2.12764314523444336},
      {"interval",
       R"({"family":"interval","arms":[{"low":0.0,"high":1.0},{"low":0.0,"high":0.8}],
           "horizons":[1000,10000,100000],"replications":2000,"seed":104})",
       4.48142011772454979},
      {"normal_var",
       R"({"family":"normal_var",
           "arms":[{"mu":0.0,"sigma":1.0},{"mu":0.0,"sigma":1.4142135623730951}],
           "horizons":[1000,10000,100000],"replications":2000,"seed":105})",
       6.51778270654185891},
      {"normal_thr",
       R"({"family":"normal_thr","kappa":1.0,
           "arms":[{"mu":1.0,"sigma":1.0},{"mu":0.0,"sigma":1.0}],
           "horizons":[1000,10000,100000],"replications":2000,"seed":106})",
       2.0},
  };
  std::vector<ScenarioResult> results;
  for (const Scenario& s : scenarios) {
    harness::ExperimentConfig config = harness::parse_config(s.config_json);
    ScenarioResult r;
    r.name = s.name;
    r.curve = harness::run_experiment(config, 1);
    r.target = s.target;
    for (const harness::ArmCurve& arm : r.curve.arm_curves) {
      if (!arm.is_optimal && arm.fitted_slope) r.slope = *arm.fitted_slope;
    }
    results.push_back(std::move(r));
  }
  return results;
}

bool slope_reproduction(const std::vector<ScenarioResult>& results, std::string& detail) {
  bool pass = true;
  std::string parts;
  for (const ScenarioResult& r : results) {
    const harness::ArmCurve* sub = nullptr;
    for (const harness::ArmCurve& arm : r.curve.arm_curves) {
      if (!arm.is_optimal) sub = &arm;
    }
    bool ok = sub != nullptr && sub->target_inv_m.has_value() &&
              std::abs(*sub->target_inv_m - r.target) <= 1e-6 && sub->fitted_slope.has_value();
    bool band_ok = ok, trend_ok = ok, factor_ok = ok;
    double ratios[8] = {0.0};
    std::size_t n_ratios = 0;
    if (ok) {
      double slope = *sub->fitted_slope;
      band_ok = std::abs(slope - r.target) <= 0.4 * r.target;
      // Ratio at the largest horizon within a factor 2 of the target.
      const auto& horizons = r.curve.horizons;
      double ratio_last = 0.0;
      double prev_gap = 0.0;
      // Trend toward the target: the distance |ratio - target| must shrink
      // until the trajectory sits within 5% of the target; once inside that
      // band it counts as converged and may wander within it (the finite-n
      // curve crosses the asymptote rather than approaching one-sidedly).
      const double band = 0.05 * r.target;
      for (std::size_t h = 0; h < horizons.size() && h < 8; ++h) {
        double ratio = sub->by_horizon[h].mean_pulls / std::log(static_cast<double>(horizons[h]));
        ratios[n_ratios++] = ratio;
        double gap = std::max(std::abs(ratio - r.target), band);
        if (h + 1 == horizons.size()) ratio_last = ratio;
        if (h > 0 && gap > prev_gap) trend_ok = false;
        prev_gap = gap;
      }
      factor_ok = ratio_last >= 0.5 * r.target && ratio_last <= 2.0 * r.target;
      ok = band_ok && trend_ok && factor_ok;
    }
    char buffer[192];
    std::snprintf(buffer, sizeof buffer, "%s%s %.3f/%.3f {", parts.empty() ? "" : ", ",
                  r.name.c_str(), sub && sub->fitted_slope ? *sub->fitted_slope : 0.0,
                  r.target);
    parts += buffer;
    for (std::size_t h = 0; h < n_ratios; ++h) {
      std::snprintf(buffer, sizeof buffer, "%s%.3f", h ? "," : "", ratios[h]);
      parts += buffer;
    }
    parts += "}";
    if (!ok) {
      std::snprintf(buffer, sizeof buffer, " [FAILED:%s%s%s]", band_ok ? "" : " slope-band",
                    trend_ok ? "" : " trend", factor_ok ? "" : " factor-2");
      parts += buffer;
    }
    pass = pass && ok;
  }
  detail = "fitted/target: " + parts;
  return pass;
}

bool uniformly_fast_diagnostic(const std::vector<ScenarioResult>& results,
                               std::string& detail) {
  bool pass = true;
  for (const ScenarioResult& r : results) {
    double prev = std::numeric_limits<double>::infinity();
    for (std::int64_t n : r.curve.horizons) {
      double value = r.curve.mean_suboptimal.at(n) / std::pow(static_cast<double>(n), 0.25);
      if (!(value < prev)) pass = false;
      prev = value;
    }
  }
  detail = "T^o(n)/n^0.25 strictly decreasing over {1e3,1e4,1e5} in all six scenarios";
  return pass;
}

bool determinism(std::string& detail) {
  const char* config_json =
      R"({"family":"normal_thr","kappa":1.0,
          "arms":[{"mu":1.0,"sigma":1.0},{"mu":0.0,"sigma":1.0}],
          "horizons":[1000,10000],"replications":200,"seed":106})";
  harness::ExperimentConfig config = harness::parse_config(config_json);
  std::string serial_a = harness::csv_string(harness::run_experiment(config, 1));
  std::string serial_b = harness::csv_string(harness::run_experiment(config, 1));
  std::string parallel = harness::csv_string(harness::run_experiment(config, 4));
  bool pass = serial_a == serial_b && serial_a == parallel;
  detail = pass ? "serial repeat and 4-worker run byte-identical"
                : "outputs differ across repeats or worker counts";
  return pass;
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&failures](int number, const char* name, bool pass,
                            const std::string& detail) {
    std::printf("[%s] criterion %d (%s): %s\n", pass ? "PASS" : "FAIL", number, name,
                detail.c_str());
    if (!pass) ++failures;
    std::fflush(stdout);
  };

  std::string detail;
  bool ok = oracle_equivalence(detail);
  report(1, "oracle equivalence", ok, detail);

  ok = range_cdf_monte_carlo(detail);
  report(2, "range CDF exactness", ok, detail);

  ok = estimator_distributions(detail);
  report(3, "estimator distributions", ok, detail);

  ok = chernoff_and_normal_tails(detail);
  report(4, "concentration bounds", ok, detail);

  std::vector<ScenarioResult> scenarios = run_slope_scenarios();
  ok = slope_reproduction(scenarios, detail);
  report(5, "slope reproduction", ok, detail);

  ok = uniformly_fast_diagnostic(scenarios, detail);
  report(6, "uniformly fast diagnostic", ok, detail);

  ok = determinism(detail);
  report(7, "determinism", ok, detail);

  return failures == 0 ? 0 : 2;
}
