#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "banditlab/errors.hpp"
#include "banditlab/harness.hpp"
#include "banditlab/oracles.hpp"
#include "banditlab/pareto.hpp"
#include "banditlab/rng.hpp"
#include "banditlab/specfun.hpp"

namespace {

using banditlab::Rng;
namespace oracles = banditlab::oracles;

[[noreturn]] void fail(const std::string& message) {
  throw banditlab::ValidationError(message);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(sep, start);
    if (end == std::string::npos) end = text.size();
    out.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

double parse_double(const std::string& token, const std::string& what) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &used);
  } catch (const std::exception&) {
    fail(what + ": '" + token + "' is not a number");
  }
  if (used != token.size()) fail(what + ": '" + token + "' is not a number");
  return value;
}

std::int64_t parse_int(const std::string& token, const std::string& what) {
  std::size_t used = 0;
  std::int64_t value = 0;
  try {
    value = std::stoll(token, &used);
  } catch (const std::exception&) {
    fail(what + ": '" + token + "' is not an integer");
  }
  if (used != token.size()) fail(what + ": '" + token + "' is not an integer");
  return value;
}

std::map<std::string, double> parse_params(const std::string& text) {
  std::map<std::string, double> params;
  for (const std::string& token : split(text, ',')) {
    std::size_t eq = token.find('=');
    if (eq == std::string::npos || eq == 0) {
      fail("--params: expected k=v, got '" + token + "'");
    }
    std::string key = token.substr(0, eq);
    if (params.count(key)) fail("--params: duplicate key '" + key + "'");
    params[key] = parse_double(token.substr(eq + 1), "--params " + key);
  }
  return params;
}

std::vector<std::int64_t> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<std::int64_t> out;
  for (const std::string& token : split(text, ',')) {
    std::int64_t v = parse_int(token, what);
    if (v < 1) fail(what + ": entries must be positive");
    out.push_back(v);
  }
  return out;
}

struct BoundRow {
  std::string name;
  double empirical = 0.0;
  double analytic = 0.0;
  bool pass = false;
};

std::string tagged(const char* lemma, std::int64_t t, double ratio, const char* tail) {
  char buffer[96];
  std::snprintf(buffer, sizeof buffer, "%s t=%lld ratio=%g %s", lemma,
                static_cast<long long>(t), ratio, tail);
  return buffer;
}

std::vector<BoundRow> verify_gamma(std::int64_t draws, std::uint64_t seed) {
  Rng rng(seed);
  const std::int64_t ts[] = {5, 10, 20};
  const double lower[] = {0.5, 0.8};
  const double upper[] = {1.25, 1.5, 2.0};
  std::vector<BoundRow> rows;
  for (std::int64_t t : ts) {
    std::int64_t lo_hits[2] = {0, 0};
    std::int64_t hi_hits[3] = {0, 0, 0};
    for (std::int64_t d = 0; d < draws; ++d) {
      double sum = 0.0;
      for (std::int64_t i = 0; i < t; ++i) sum -= std::log(rng.uniform_open());
      for (int i = 0; i < 2; ++i) {
        if (sum <= lower[i] * static_cast<double>(t)) ++lo_hits[i];
      }
      for (int i = 0; i < 3; ++i) {
        if (sum >= upper[i] * static_cast<double>(t)) ++hi_hits[i];
      }
    }
    for (int i = 0; i < 2; ++i) {
      double emp = static_cast<double>(lo_hits[i]) / static_cast<double>(draws);
      double bound = oracles::chernoff_bound(oracles::BoundKind::gamma, t, lower[i],
                                             oracles::Tail::lower);
      rows.push_back({tagged("gamma", t, lower[i], "lower"), emp, bound, emp <= bound});
    }
    for (int i = 0; i < 3; ++i) {
      double emp = static_cast<double>(hi_hits[i]) / static_cast<double>(draws);
      double bound = oracles::chernoff_bound(oracles::BoundKind::gamma, t, upper[i],
                                             oracles::Tail::upper);
      rows.push_back({tagged("gamma", t, upper[i], "upper"), emp, bound, emp <= bound});
    }
  }
  return rows;
}

std::vector<BoundRow> verify_chi2(std::int64_t draws, std::uint64_t seed) {
  Rng rng(seed);
  const std::int64_t ts[] = {4, 10};
  const double lower[] = {0.5, 0.8};
  const double upper[] = {1.5, 2.0};
  std::vector<BoundRow> rows;
  for (std::int64_t t : ts) {
    std::int64_t lo_hits[2] = {0, 0};
    std::int64_t hi_hits[2] = {0, 0};
    for (std::int64_t d = 0; d < draws; ++d) {
      double sum = 0.0;
      for (std::int64_t i = 0; i < t; ++i) {
        double z = banditlab::specfun::norm_quantile(rng.uniform_open());
        sum += z * z;
      }
      for (int i = 0; i < 2; ++i) {
        if (sum <= lower[i] * static_cast<double>(t)) ++lo_hits[i];
        if (sum >= upper[i] * static_cast<double>(t)) ++hi_hits[i];
      }
    }
    for (int i = 0; i < 2; ++i) {
      double emp = static_cast<double>(lo_hits[i]) / static_cast<double>(draws);
      double bound = oracles::chernoff_bound(oracles::BoundKind::chi2, t, lower[i],
                                             oracles::Tail::lower);
      rows.push_back({tagged("chi2", t, lower[i], "lower"), emp, bound, emp <= bound});
    }
    for (int i = 0; i < 2; ++i) {
      double emp = static_cast<double>(hi_hits[i]) / static_cast<double>(draws);
      double bound = oracles::chernoff_bound(oracles::BoundKind::chi2, t, upper[i],
                                             oracles::Tail::upper);
      rows.push_back({tagged("chi2", t, upper[i], "upper"), emp, bound, emp <= bound});
    }
  }
  return rows;
}

std::vector<BoundRow> verify_normal(std::int64_t draws, std::uint64_t seed) {
  Rng rng(seed);
  const double zs[] = {0.5, 1.0, 2.0, 3.0};
  std::int64_t hits[4] = {0, 0, 0, 0};
  for (std::int64_t d = 0; d < draws; ++d) {
    double z = banditlab::specfun::norm_quantile(rng.uniform_open());
    for (int i = 0; i < 4; ++i) {
      if (z > zs[i]) ++hits[i];
    }
  }
  std::vector<BoundRow> rows;
  for (int i = 0; i < 4; ++i) {
    double emp = static_cast<double>(hits[i]) / static_cast<double>(draws);
    double bound = oracles::normal_tail_bound(zs[i]);
    char name[64];
    std::snprintf(name, sizeof name, "normal z=%g upper", zs[i]);
    rows.push_back({name, emp, bound, emp <= bound});
  }
  return rows;
}

std::vector<BoundRow> verify_range(std::int64_t draws, std::uint64_t seed) {
  Rng rng(seed);
  const std::pair<std::int64_t, double> cases[] = {
      {2, 0.5}, {5, 0.7}, {5, 0.3}, {10, 0.6}};
  std::vector<BoundRow> rows;
  for (const auto& [t, lambda] : cases) {
    std::int64_t hits = 0;
    for (std::int64_t d = 0; d < draws; ++d) {
      double lo = 1.0, hi = 0.0;
      for (std::int64_t i = 0; i < t; ++i) {
        double u = rng.uniform_open();
        lo = std::min(lo, u);
        hi = std::max(hi, u);
      }
      if (hi - lo <= lambda) ++hits;
    }
    double emp = static_cast<double>(hits) / static_cast<double>(draws);
    double exact = oracles::range_cdf(t, lambda);
    double se = std::sqrt(exact * (1.0 - exact) / static_cast<double>(draws));
    char name[64];
    std::snprintf(name, sizeof name, "range t=%lld lambda=%g cdf",
                  static_cast<long long>(t), lambda);
    rows.push_back({name, emp, exact, std::abs(emp - exact) <= 3.0 * se});
  }
  return rows;
}

std::vector<BoundRow> verify_estimators(std::int64_t draws, std::uint64_t seed) {
  Rng rng(seed);
  const std::int64_t t = 20;
  const double alpha = 2.0, beta = 1.0;
  const banditlab::pareto::ParetoParams truth{alpha, beta, 0.0};
  std::vector<double> shape_pivot, scale_pivot;
  shape_pivot.reserve(static_cast<std::size_t>(draws));
  scale_pivot.reserve(static_cast<std::size_t>(draws));
  for (std::int64_t d = 0; d < draws; ++d) {
    banditlab::pareto::ParetoStats stats;
    for (std::int64_t i = 0; i < t; ++i) {
      banditlab::pareto::update(stats, banditlab::pareto::quantile(truth, rng.uniform_open()));
    }
    shape_pivot.push_back(alpha * stats.log_sum);
    scale_pivot.push_back(stats.min_sample / beta);
  }
  double ks_shape = oracles::ks_statistic(
      shape_pivot, [&](double x) { return oracles::gamma_cdf(x, static_cast<double>(t - 1)); });
  double ks_scale = oracles::ks_statistic(scale_pivot, [&](double x) {
    return x <= 1.0 ? 0.0 : 1.0 - std::pow(x, -alpha * static_cast<double>(t));
  });
  double crit = oracles::ks_critical_01(static_cast<std::size_t>(draws));
  double corr = std::abs(oracles::pearson_correlation(shape_pivot, scale_pivot));
  double corr_limit = 5.0 / std::sqrt(static_cast<double>(draws));
  return {
      {"estimators shape-pivot KS", ks_shape, crit, ks_shape < crit},
      {"estimators scale-pivot KS", ks_scale, crit, ks_scale < crit},
      {"estimators pivot-correlation", corr, corr_limit, corr < corr_limit},
  };
}

int run_simulate(const std::string& config_path, const std::string& out_path,
                 std::int64_t replications, std::int64_t seed, int workers) {
  banditlab::harness::ExperimentConfig config = banditlab::harness::load_config(config_path);
  config.output_path = out_path;
  if (replications >= 0) config.replications = replications;
  if (seed >= 0) config.seed = static_cast<std::uint64_t>(seed);
  if (workers < 1) fail("--workers must be at least 1");
  banditlab::harness::RegretCurve curve = banditlab::harness::run_experiment(config, workers);
  std::printf("wrote %s\n", out_path.c_str());
  for (std::size_t i = 0; i < curve.arm_curves.size(); ++i) {
    const auto& arm = curve.arm_curves[i];
    if (arm.is_optimal || !arm.fitted_slope) continue;
    std::printf("arm %zu: slope %.6g (se %.3g) vs target %.6g\n", i + 1, *arm.fitted_slope,
                arm.slope_se.value_or(0.0), arm.target_inv_m.value_or(0.0));
  }
  return 0;
}

int run_index_table(const std::string& family, const std::string& params_text,
                    const std::string& n_text, const std::string& t_text) {
  std::map<std::string, double> params = parse_params(params_text);
  std::vector<std::int64_t> ns = parse_int_list(n_text, "--n");
  std::vector<std::int64_t> ts = parse_int_list(t_text, "--t");
  std::printf("n,t,index\n");
  for (std::int64_t n : ns) {
    for (std::int64_t t : ts) {
      double value = banditlab::harness::plugin_index(family, params, n, t);
      std::printf("%lld,%lld,%.9g\n", static_cast<long long>(n), static_cast<long long>(t),
                  value);
    }
  }
  return 0;
}

int run_verify_bounds(const std::string& lemma, std::int64_t draws, std::int64_t seed) {
  if (draws < 1) fail("--draws must be at least 1");
  if (seed < 0) fail("--seed must be nonnegative");
  auto s = static_cast<std::uint64_t>(seed);
  std::vector<BoundRow> rows;
  if (lemma == "gamma") {
    rows = verify_gamma(draws, s);
  } else if (lemma == "chi2") {
    rows = verify_chi2(draws, s);
  } else if (lemma == "normal") {
    rows = verify_normal(draws, s);
  } else if (lemma == "range") {
    rows = verify_range(draws, s);
  } else if (lemma == "estimators") {
    rows = verify_estimators(draws, s);
  } else {
    fail("--lemma must be one of gamma, chi2, normal, range, estimators");
  }
  std::printf("bound,empirical,analytic,verdict\n");
  bool all_pass = true;
  for (const BoundRow& row : rows) {
    std::printf("%s,%.6g,%.6g,%s\n", row.name.c_str(), row.empirical, row.analytic,
                row.pass ? "pass" : "fail");
    all_pass = all_pass && row.pass;
  }
  return all_pass ? 0 : 2;
}

int run_oracle_check(const std::string& family, int grid_resolution) {
  std::vector<std::string> families;
  if (family == "all") {
    families = {"pareto_mean", "pareto_tail", "pareto_median", "coverage",
                "interval",    "normal_chk",  "normal_var",    "normal_thr"};
  } else {
    families = {family};
  }
  std::printf("family,m_comparisons,max_m_error,index_comparisons,max_index_error,verdict\n");
  bool all_pass = true;
  for (const std::string& name : families) {
    oracles::OracleCheckResult r = oracles::oracle_self_check(name, grid_resolution);
    bool pass = r.max_m_error <= 1e-6 && r.max_index_error <= 1e-8;
    std::printf("%s,%d,%.3g,%d,%.3g,%s\n", name.c_str(), r.m_comparisons, r.max_m_error,
                r.index_comparisons, r.max_index_error, pass ? "pass" : "fail");
    all_pass = all_pass && pass;
  }
  return all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Laboratory for index policies over score functionals of unknown distributions"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  std::int64_t replications = -1, sim_seed = -1;
  int workers = 1;
  CLI::App* simulate = app.add_subcommand("simulate", "run seeded replications, write a CSV");
  simulate->add_option("--config", config_path, "experiment config (JSON)")->required();
  simulate->add_option("--out", out_path, "output CSV path")->required();
  simulate->add_option("--replications", replications, "override replication count");
  simulate->add_option("--seed", sim_seed, "override base seed");
  simulate->add_option("--workers", workers, "worker thread limit (default 1)");

  std::string table_family, params_text, n_text, t_text;
  CLI::App* table = app.add_subcommand("index-table", "print plug-in index values as CSV");
  table->add_option("--family", table_family, "model family name")->required();
  table->add_option("--params", params_text, "plug-in estimates as k=v,...")->required();
  table->add_option("--n", n_text, "comma-separated clock values")->required();
  table->add_option("--t", t_text, "comma-separated pull counts")->required();

  std::string lemma;
  std::int64_t draws = 0, vb_seed = 0;
  CLI::App* bounds = app.add_subcommand("verify-bounds",
                                        "Monte Carlo check of the concentration bounds");
  bounds->add_option("--lemma", lemma, "gamma|chi2|normal|range|estimators")->required();
  bounds->add_option("--draws", draws, "Monte Carlo sample size")->required();
  bounds->add_option("--seed", vb_seed, "base seed")->required();

  std::string check_family;
  int grid_resolution = 64;
  CLI::App* check = app.add_subcommand("oracle-check",
                                       "closed form vs search oracle max-abs-error report");
  check->add_option("--family", check_family, "model family name, or 'all'")->required();
  check->add_option("--grid-resolution", grid_resolution, "coarse grid points per axis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*simulate) return run_simulate(config_path, out_path, replications, sim_seed, workers);
    if (*table) return run_index_table(table_family, params_text, n_text, t_text);
    if (*bounds) return run_verify_bounds(lemma, draws, vb_seed);
    if (*check) return run_oracle_check(check_family, grid_resolution);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
