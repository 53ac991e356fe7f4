#include "banditlab/engine.hpp"

#include <cmath>
#include <limits>

#include "banditlab/errors.hpp"

namespace banditlab::engine {

PolicyState make_state(const ModelPolicy& policy) {
  std::size_t n_arms = policy.arm_count();
  if (n_arms < 2) throw ValidationError("engine: need at least 2 arms");
  PolicyState state;
  state.n0 = policy.initial_pulls();
  state.pulls.assign(n_arms, 0);
  state.stats.reserve(n_arms);
  for (std::size_t i = 0; i < n_arms; ++i) state.stats.push_back(policy.initial_stats(i));
  return state;
}

std::size_t select_arm(const PolicyState& state, const std::vector<double>& indices,
                       Rng& rng) {
  std::size_t n_arms = state.arm_count();
  if (n_arms == 0) throw ValidationError("select_arm: empty arm set");

  if (state.clock_n < state.n0 * static_cast<std::int64_t>(n_arms)) {
    std::size_t pick = 0;
    for (std::size_t i = 1; i < n_arms; ++i) {
      if (state.pulls[i] < state.pulls[pick]) pick = i;
    }
    return pick;
  }

  if (indices.size() != n_arms) {
    throw ValidationError("select_arm: need one index per arm");
  }
  double best = -std::numeric_limits<double>::infinity();
  for (double v : indices) {
    if (std::isnan(v)) throw ValidationError("select_arm: NaN index");
    if (v > best) best = v;
  }
  std::size_t tied = 0;
  for (double v : indices) tied += (v == best);
  if (tied == 1) {
    for (std::size_t i = 0;; ++i) {
      if (indices[i] == best) return i;
    }
  }
  std::size_t pick = rng.uniform_index(tied);
  for (std::size_t i = 0;; ++i) {
    if (indices[i] == best && pick-- == 0) return i;
  }
}

void observe(PolicyState& state, std::size_t arm, double reward) {
  if (arm >= state.arm_count()) throw ValidationError("observe: arm out of range");
  if (!std::isfinite(reward)) throw ValidationError("observe: non-finite reward");
  std::visit([&](auto& stats) {
    using S = std::decay_t<decltype(stats)>;
    if constexpr (std::is_same_v<S, pareto::ParetoStats>) {
      pareto::update(stats, reward);
    } else if constexpr (std::is_same_v<S, coverage::CoverageStats>) {
      coverage::update(stats, reward);
    } else if constexpr (std::is_same_v<S, interval::IntervalStats>) {
      interval::update(stats, reward);
    } else {
      normal::update(stats, reward);
    }
  }, state.stats[arm]);
  state.pulls[arm] += 1;
  state.clock_n += 1;
}

Trace run_horizon(const ModelPolicy& policy, std::int64_t horizon, std::uint64_t seed) {
  std::size_t n_arms = policy.arm_count();
  PolicyState state = make_state(policy);
  if (horizon < state.n0 * static_cast<std::int64_t>(n_arms)) {
    throw ValidationError("run_horizon: horizon shorter than the initial phase");
  }

  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n_arms; ++i) {
    double s = policy.true_score(i);
    if (s > best_score) best_score = s;
  }
  std::vector<char> optimal(n_arms);
  for (std::size_t i = 0; i < n_arms; ++i) optimal[i] = (policy.true_score(i) == best_score);

  Rng rng(seed);
  auto ctx = policy.begin_run();
  Trace trace;
  trace.selections.reserve(static_cast<std::size_t>(horizon));
  trace.rewards.reserve(static_cast<std::size_t>(horizon));

  std::vector<double> indices(n_arms);
  std::int64_t next_checkpoint = 1;
  std::int64_t suboptimal = 0;
  const std::int64_t initial_rounds = state.n0 * static_cast<std::int64_t>(n_arms);
  const double inf = std::numeric_limits<double>::infinity();

  for (std::int64_t round = 1; round <= horizon; ++round) {
    std::size_t arm;
    if (state.clock_n < initial_rounds) {
      arm = select_arm(state, indices, rng);
    } else {
      for (std::size_t i = 0; i < n_arms; ++i) {
        try {
          indices[i] = policy.index(i, state.stats[i], round, ctx.get());
        } catch (const DegenerateDataError&) {
          indices[i] = inf;
        }
      }
      arm = select_arm(state, indices, rng);
    }
    double reward = policy.sample(arm, rng.uniform_open());
    observe(state, arm, reward);
    trace.selections.push_back(static_cast<std::int32_t>(arm));
    trace.rewards.push_back(reward);
    if (!optimal[arm]) ++suboptimal;
    if (round == next_checkpoint) {
      trace.suboptimal_counts[round] = suboptimal;
      next_checkpoint *= 10;
    }
  }
  trace.suboptimal_counts[horizon] = suboptimal;
  return trace;
}

}  // namespace banditlab::engine
