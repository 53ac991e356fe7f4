#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "banditlab/errors.hpp"
#include "banditlab/harness.hpp"
#include "banditlab/interval.hpp"
#include "banditlab/normal.hpp"
#include "banditlab/pareto.hpp"
#include "banditlab/rng.hpp"
#include "banditlab/specfun.hpp"

using banditlab::Rng;
using banditlab::ValidationError;
namespace harness = banditlab::harness;

namespace {

// Asserts the parse fails and that the message carries the given context.
void check_rejects(const std::string& json_text, const std::string& context) {
  try {
    harness::parse_config(json_text);
    FAIL_CHECK("expected rejection of: " << json_text);
  } catch (const ValidationError& e) {
    CAPTURE(json_text);
    CHECK(std::string(e.what()).find(context) != std::string::npos);
  }
}

const char* kChkConfig =
    R"({"family":"normal_chk","arms":[{"mu":0.0,"sigma":1.0},{"mu":1.0,"sigma":1.0}],
        "horizons":[6,20,50],"replications":5,"seed":11})";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(bool(in), "cannot open " << path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

}  // namespace

TEST_CASE("config parsing accepts the documented schema") {
  auto config = harness::parse_config(kChkConfig);
  CHECK(config.family == "normal_chk");
  CHECK(config.arm_models.size() == 2);
  CHECK(config.horizons == std::vector<std::int64_t>{6, 20, 50});
  CHECK(config.replications == 5);
  CHECK(config.seed == 11);
  CHECK(config.output_path.empty());
  CHECK_FALSE(config.oracle_targets);

  auto thr = harness::parse_config(
      R"({"family":"normal_thr","kappa":1.5,"arms":[{"mu":0.0,"sigma":1.0},
          {"mu":1.0,"sigma":2.0}],"horizons":[10],"replications":1,"seed":0})");
  CHECK(thr.shared.kappa == 1.5);

  auto cov = harness::parse_config(
      R"({"family":"coverage","d_schedule":"log2","arms":[{"intervals":[[0.0,0.5]]},
          {"intervals":[[0.1,0.3],[0.6,0.9]]}],"horizons":[20],"replications":1,"seed":1})");
  CHECK(cov.shared.d_schedule.has_value());
  CHECK(cov.shared.d_schedule->name() == "log2");

  // normal_var arms may omit mu; it only affects sampling, not the score.
  auto var = harness::parse_config(
      R"({"family":"normal_var","arms":[{"sigma":1.0},{"mu":1.0,"sigma":2.0}],
          "horizons":[10],"replications":1,"seed":2})");
  CHECK(var.arm_models.size() == 2);
}

TEST_CASE("config parsing rejects unknown or mistyped fields with context") {
  check_rejects(R"({"family":"normal_chk","arms":[],"horizons":[5],"replications":1,
                    "seed":0,"extra":1})",
                "extra");
  check_rejects(R"({"family":"normal_chk","arms":[{"mu":0,"sigma":1},
                    {"mu":1,"sigma":1,"beta":2}],"horizons":[5],"replications":1,"seed":0})",
                "arms[2]");
  check_rejects(R"({"arms":[],"horizons":[5],"replications":1,"seed":0})", "family");
  check_rejects(R"({"family":"no_such","arms":[{}],"horizons":[5],"replications":1,
                    "seed":0})",
                "family");
  check_rejects(R"({"family":"normal_chk","arms":"nope","horizons":[5],"replications":1,
                    "seed":0})",
                "arms");
  check_rejects(R"({"family":"normal_chk","arms":[],"horizons":[5.5],"replications":1,
                    "seed":0})",
                "horizons");
  check_rejects(R"({"family":"normal_chk","arms":[],"horizons":[5],"replications":1.5,
                    "seed":0})",
                "replications");
  check_rejects(R"({"family":"normal_chk","arms":[],"horizons":[5],"replications":1,
                    "seed":-3})",
                "seed");
  check_rejects("not json at all", "invalid JSON");

  // Shared knobs are rejected on families that do not use them.
  check_rejects(R"({"family":"normal_chk","kappa":1.0,"arms":[],"horizons":[5],
                    "replications":1,"seed":0})",
                "kappa");
  check_rejects(R"({"family":"pareto_mean","d_schedule":"sqrt","arms":[],"horizons":[5],
                    "replications":1,"seed":0})",
                "d_schedule");
  check_rejects(R"({"family":"coverage","d_schedule":"cubic","arms":[],"horizons":[5],
                    "replications":1,"seed":0})",
                "d_schedule");
  check_rejects(R"({"family":"normal_thr","arms":[{"mu":0,"sigma":1}],"horizons":[5],
                    "replications":1,"seed":0})",
                "kappa");

  // Per-family arm schemas.
  check_rejects(R"({"family":"pareto_tail","arms":[{"alpha":1.0}],"horizons":[5],
                    "replications":1,"seed":0})",
                "beta");
  check_rejects(R"({"family":"coverage","arms":[{"intervals":[[0.5]]}],"horizons":[5],
                    "replications":1,"seed":0})",
                "intervals");
  check_rejects(R"({"family":"interval","arms":[{"low":0.0,"high":1.0,"mu":2}],
                    "horizons":[5],"replications":1,"seed":0})",
                "mu");
}

TEST_CASE("config files are loaded verbatim") {
  const std::string path = "/tmp/banditlab_test_harness_config.json";
  {
    std::ofstream out(path, std::ios::binary);
    out << kChkConfig;
  }
  auto config = harness::load_config(path);
  CHECK(config.family == "normal_chk");
  std::remove(path.c_str());
  CHECK_THROWS_AS(harness::load_config("/tmp/banditlab_no_such_file.json"),
                  ValidationError);
}

TEST_CASE("experiment validation enforces run-level invariants") {
  auto config = harness::parse_config(kChkConfig);
  CHECK_NOTHROW(harness::validate(config));

  auto one_arm = config;
  one_arm.arm_models.pop_back();
  CHECK_THROWS_AS(harness::validate(one_arm), ValidationError);

  auto bad_order = config;
  bad_order.horizons = {6, 6};
  CHECK_THROWS_AS(harness::validate(bad_order), ValidationError);

  auto no_reps = config;
  no_reps.replications = 0;
  CHECK_THROWS_AS(harness::validate(no_reps), ValidationError);

  // The largest horizon must cover the initial phase n0 * N = 3 * 2.
  auto short_run = config;
  short_run.horizons = {5};
  CHECK_THROWS_AS(harness::validate(short_run), ValidationError);
  short_run.horizons = {6};
  CHECK_NOTHROW(harness::validate(short_run));
}

TEST_CASE("slope fitting recovers exact and noisy lines") {
  std::vector<std::pair<double, double>> exact;
  for (double x : {1.0, 2.0, 3.0, 4.0}) exact.push_back({x, 2.0 + 3.0 * x});
  auto fit = harness::fit_slope(exact);
  CHECK(fit.slope == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(fit.se <= 1e-10);

  Rng rng(2024);
  std::vector<std::pair<double, double>> noisy;
  for (double n : {10.0, 100.0, 1000.0, 10000.0, 100000.0}) {
    double eps = 0.1 * banditlab::specfun::norm_quantile(rng.uniform_open());
    noisy.push_back({std::log(n), 5.0 * std::log(n) + eps});
  }
  fit = harness::fit_slope(noisy);
  CHECK(std::abs(fit.slope - 5.0) <= 0.2);
  CHECK(fit.se > 0.0);
  CHECK(fit.se <= 0.2);

  CHECK_THROWS_AS(harness::fit_slope({{1.0, 1.0}, {2.0, 2.0}}), ValidationError);
  CHECK_THROWS_AS(harness::fit_slope({{1.0, 1.0}, {1.0, 2.0}, {1.0, 3.0}}),
                  ValidationError);
}

TEST_CASE("experiments conserve pulls and aim at the right target") {
  auto config = harness::parse_config(kChkConfig);
  auto curve = harness::run_experiment(config);
  CHECK(curve.family == "normal_chk");
  CHECK(curve.horizons == config.horizons);
  CHECK(curve.arm_curves.size() == 2);

  for (std::size_t h = 0; h < curve.horizons.size(); ++h) {
    double total = 0.0;
    for (const auto& arm : curve.arm_curves) total += arm.by_horizon[h].mean_pulls;
    CHECK(total == doctest::Approx(static_cast<double>(curve.horizons[h])).epsilon(1e-12));
  }

  const auto& weak = curve.arm_curves[0];
  const auto& strong = curve.arm_curves[1];
  CHECK_FALSE(weak.is_optimal);
  CHECK(strong.is_optimal);
  CHECK_FALSE(strong.target_inv_m.has_value());
  CHECK_FALSE(strong.fitted_slope.has_value());
  REQUIRE(weak.target_inv_m.has_value());
  // 1 / m_chk(N(0,1), rho = 1) = 2 / ln 2.
  CHECK(*weak.target_inv_m == doctest::Approx(2.0 / std::log(2.0)).epsilon(1e-12));
  CHECK(weak.fitted_slope.has_value());

  CHECK(curve.mean_suboptimal.size() == curve.horizons.size());
  for (std::int64_t n : curve.horizons) {
    CHECK(curve.mean_suboptimal.at(n) >= 0.0);
    CHECK(curve.mean_suboptimal.at(n) <= static_cast<double>(n));
  }
}

TEST_CASE("equally scored arms produce no suboptimal statistics") {
  auto config = harness::parse_config(
      R"({"family":"normal_chk","arms":[{"mu":0.5,"sigma":1.0},{"mu":0.5,"sigma":1.0}],
          "horizons":[6,20],"replications":3,"seed":5})");
  auto curve = harness::run_experiment(config);
  for (const auto& arm : curve.arm_curves) {
    CHECK(arm.is_optimal);
    CHECK_FALSE(arm.target_inv_m.has_value());
    CHECK_FALSE(arm.fitted_slope.has_value());
  }
  for (std::int64_t n : curve.horizons) CHECK(curve.mean_suboptimal.at(n) == 0.0);
}

TEST_CASE("a horizon equal to the initial phase gives n0 pulls per arm") {
  auto config = harness::parse_config(
      R"({"family":"normal_chk","arms":[{"mu":0.0,"sigma":1.0},{"mu":1.0,"sigma":1.0}],
          "horizons":[6],"replications":1,"seed":3})");
  auto curve = harness::run_experiment(config);
  for (const auto& arm : curve.arm_curves) {
    CHECK(arm.by_horizon[0].mean_pulls == 3.0);
    CHECK(arm.by_horizon[0].se_pulls == 0.0);  // single replication
  }
}

TEST_CASE("worker count never changes the output bytes") {
  auto config = harness::parse_config(
      R"({"family":"interval","arms":[{"low":0.0,"high":1.0},{"low":0.0,"high":0.7}],
          "horizons":[10,40],"replications":7,"seed":21})");
  auto serial = harness::csv_string(harness::run_experiment(config, 1));
  auto threaded = harness::csv_string(harness::run_experiment(config, 3));
  CHECK(serial == threaded);
}

TEST_CASE("csv output round-trips through emit_csv") {
  auto config = harness::parse_config(kChkConfig);
  auto curve = harness::run_experiment(config);
  std::string csv = harness::csv_string(curve);
  CHECK(csv.rfind("arm,horizon,mean_pulls,se_pulls,is_optimal,target_inv_M,"
                  "fitted_slope,slope_se\n",
                  0) == 0);
  CHECK(csv.find("# family=normal_chk replications=5 seed=11") != std::string::npos);

  const std::string path = "/tmp/banditlab_test_harness_roundtrip.csv";
  harness::emit_csv(curve, path);
  CHECK(read_file(path) == csv);
  std::remove(path.c_str());

  CHECK_THROWS_AS(harness::emit_csv(curve, "/tmp/no_such_dir_banditlab/out.csv"),
                  ValidationError);
}

TEST_CASE("csv output matches the committed golden file") {
  auto config = harness::parse_config(
      R"({"family":"pareto_tail","arms":[{"alpha":1.0,"beta":1.0},{"alpha":2.0,"beta":1.0}],
          "horizons":[10,30],"replications":3,"seed":7})");
  std::string csv = harness::csv_string(harness::run_experiment(config));
  std::string golden = read_file(std::string(BANDITLAB_TEST_DATA_DIR) +
                                 "/golden_pareto_tail.csv");
  CHECK(csv == golden);
}

TEST_CASE("oracle-backed targets agree with the closed forms") {
  const char* base =
      R"({"family":"pareto_tail","arms":[{"alpha":1.0,"beta":1.0},{"alpha":2.0,"beta":1.0}],
          "horizons":[10],"replications":1,"seed":9%s})";
  char text[512];
  std::snprintf(text, sizeof text, base, "");
  auto closed = harness::run_experiment(harness::parse_config(text));
  std::snprintf(text, sizeof text, base, R"(,"oracle_targets":true)");
  auto searched = harness::run_experiment(harness::parse_config(text));
  REQUIRE(closed.arm_curves[1].target_inv_m.has_value());
  REQUIRE(searched.arm_curves[1].target_inv_m.has_value());
  CHECK(*closed.arm_curves[1].target_inv_m ==
        doctest::Approx(*searched.arm_curves[1].target_inv_m).epsilon(1e-6));
}

TEST_CASE("plug-in indices match the family formulas") {
  namespace pareto = banditlab::pareto;
  namespace interval = banditlab::interval;
  namespace cov = banditlab::coverage;
  namespace normal = banditlab::normal;

  // Pareto: alpha_hat = (t-1)/log_sum inverts to log_sum = (t-1)/alpha.
  pareto::ParetoStats ps{9, 1.5, 8.0 / 2.0};
  CHECK(harness::plugin_index("pareto_mean", {{"alpha", 2.0}, {"beta", 1.5}}, 100, 9) ==
        pareto::index(ps, 100, pareto::SeparableScore::mean_score()));
  CHECK(harness::plugin_index("pareto_median", {{"alpha", 2.0}, {"beta", 1.5}}, 100, 9) ==
        pareto::index(ps, 100, pareto::SeparableScore::median_score()));

  CHECK(harness::plugin_index("coverage", {{"measure", 0.1}}, 16, 6) ==
        cov::index_from_measure(0.1, 6, 16, cov::PartitionSchedule::sqrt_schedule()));
  CHECK(harness::plugin_index("coverage", {{"measure", 0.1}, {"d_log2", 1.0}}, 16, 8) ==
        cov::index_from_measure(0.1, 8, 16, cov::PartitionSchedule::log2_schedule()));

  interval::IntervalStats is{5, 0.0, 1.0};
  CHECK(harness::plugin_index("interval", {{"low", 0.0}, {"high", 1.0}}, 50, 5) ==
        interval::index(is, 50, interval::MonotoneScore2D::mean_score()));

  normal::NormalStats chk{4, 1.0, 3.0};
  CHECK(harness::plugin_index("normal_chk", {{"mu", 1.0}, {"sigma", 1.0}}, 5, 4) ==
        normal::index_chk(chk, 5));
  normal::NormalStats var_default_mu{4, 0.0, 3.0};
  CHECK(harness::plugin_index("normal_var", {{"sigma", 1.0}}, 5, 4) ==
        normal::index_var(var_default_mu, 5));

  normal::NormalStats thr{3, 0.25, 0.0};
  CHECK(harness::plugin_index("normal_thr",
                              {{"mu", 0.25}, {"sigma", 2.0}, {"kappa", 1.5}}, 30, 3) ==
        normal::index_threshold(thr, 30, {1.5, 2.0}));

  CHECK_THROWS_AS(harness::plugin_index("no_family", {}, 5, 4), ValidationError);
  CHECK_THROWS_AS(harness::plugin_index("normal_chk", {{"mu", 0.0}}, 5, 4),
                  ValidationError);
  CHECK_THROWS_AS(
      harness::plugin_index("normal_chk", {{"mu", 0.0}, {"sigma", 1.0}, {"x", 1.0}}, 5, 4),
      ValidationError);
  CHECK_THROWS_AS(harness::plugin_index("coverage", {{"measure", 1.5}}, 16, 6),
                  ValidationError);
  CHECK_THROWS_AS(harness::plugin_index("pareto_mean", {{"alpha", 2.0}, {"beta", 1.0}}, 5, 1),
                  ValidationError);
}
