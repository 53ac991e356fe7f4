#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "banditlab/coverage.hpp"
#include "banditlab/interval.hpp"
#include "banditlab/normal.hpp"
#include "banditlab/pareto.hpp"
#include "banditlab/rng.hpp"

namespace banditlab::engine {

using SufficientStats = std::variant<pareto::ParetoStats, coverage::CoverageStats,
                                     interval::IntervalStats, normal::NormalStats>;

// Value-semantic snapshot of one run: global clock, per-arm pull counts and
// accumulated statistics. sum(pulls) == clock_n at every round.
struct PolicyState {
  std::int64_t clock_n = 0;
  std::int64_t n0 = 0;
  std::vector<std::int64_t> pulls;
  std::vector<SufficientStats> stats;

  std::size_t arm_count() const { return pulls.size(); }
};

// Per-round record of a run plus suboptimal-activation counts T^o at each
// power-of-10 checkpoint and at the final horizon. Arm ids are 0-based.
struct Trace {
  std::vector<std::int32_t> selections;
  std::vector<double> rewards;
  std::map<std::int64_t, std::int64_t> suboptimal_counts;
};

// Mutable per-run scratch owned by run_horizon, never shared across runs;
// lets policies keep caches (e.g. incremental binning) while staying
// immutable and shareable across threads themselves.
struct RunContext {
  virtual ~RunContext() = default;
};

// One model family bound to a fixed list of arms. Implementations are
// immutable after construction; all per-run mutability lives in RunContext.
class ModelPolicy {
 public:
  virtual ~ModelPolicy() = default;

  virtual std::size_t arm_count() const = 0;
  virtual std::int64_t initial_pulls() const = 0;
  virtual std::string family_name() const = 0;

  virtual SufficientStats initial_stats(std::size_t arm) const = 0;
  // Inverse-CDF draw: every random sample is quantile(u) for u in (0,1).
  virtual double sample(std::size_t arm, double u) const = 0;
  virtual double true_score(std::size_t arm) const = 0;
  // Closed-form divergence floor M_{f_arm}(rho); 0 when rho <= s(f_arm).
  virtual double divergence_floor(std::size_t arm, double rho) const = 0;
  // Upper-confidence index u(n, t); throws DegenerateDataError when the
  // estimate is degenerate (callers treat that as +infinity).
  virtual double index(std::size_t arm, const SufficientStats& stats, std::int64_t n,
                       RunContext* ctx) const = 0;

  virtual std::unique_ptr<RunContext> begin_run() const { return nullptr; }
};

PolicyState make_state(const ModelPolicy& policy);

// Initial phase: round-robin until every arm has n0 pulls (indices ignored).
// Afterwards: argmax of indices, exact float ties broken uniformly at random.
std::size_t select_arm(const PolicyState& state, const std::vector<double>& indices,
                       Rng& rng);

// Applies one reward to the arm's family accumulator and advances the clock.
void observe(PolicyState& state, std::size_t arm, double reward);

Trace run_horizon(const ModelPolicy& policy, std::int64_t horizon, std::uint64_t seed);

}  // namespace banditlab::engine
