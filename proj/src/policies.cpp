#include "banditlab/arms.hpp"

#include <cmath>
#include <utility>

#include "banditlab/errors.hpp"

namespace banditlab::arms {

namespace {

using engine::ModelPolicy;
using engine::RunContext;
using engine::SufficientStats;

class ParetoPolicy final : public ModelPolicy {
 public:
  explicit ParetoPolicy(std::vector<ParetoArm> arm_list) : arms_(std::move(arm_list)) {
    for (const ParetoArm& arm : arms_) {
      pareto::validate(arm.params);
      if (arm.score.tag() != arms_[0].score.tag() ||
          arm.score.floor_l() != arms_[0].score.floor_l()) {
        throw ValidationError("pareto: arms must share one score functional");
      }
      if (arm.params.floor_l != arm.score.floor_l()) {
        throw ValidationError("pareto: arm floor must match the score's family floor");
      }
    }
  }

  std::size_t arm_count() const override { return arms_.size(); }
  std::int64_t initial_pulls() const override { return pareto::kInitialPulls; }
  std::string family_name() const override {
    switch (arms_[0].score.tag()) {
      case pareto::ScoreTag::mean: return "pareto_mean";
      case pareto::ScoreTag::tail_exponent: return "pareto_tail";
      case pareto::ScoreTag::median: return "pareto_median";
      default: return "pareto_custom";
    }
  }
  SufficientStats initial_stats(std::size_t) const override { return pareto::ParetoStats{}; }
  double sample(std::size_t arm, double u) const override {
    return pareto::quantile(arms_[arm].params, u);
  }
  double true_score(std::size_t arm) const override {
    return arms_[arm].score.value(arms_[arm].params);
  }
  double divergence_floor(std::size_t arm, double rho) const override {
    return pareto::m(arms_[arm].params, rho, arms_[arm].score);
  }
  double index(std::size_t arm, const SufficientStats& stats, std::int64_t n,
               RunContext*) const override {
    return pareto::index(std::get<pareto::ParetoStats>(stats), n, arms_[arm].score);
  }

 private:
  std::vector<ParetoArm> arms_;
};

struct CoverageContext final : RunContext {
  std::vector<coverage::IncrementalBinning> bins;
};

class CoveragePolicy final : public ModelPolicy {
 public:
  CoveragePolicy(std::vector<CoverageArm> arm_list, coverage::PartitionSchedule schedule)
      : arms_(std::move(arm_list)), schedule_(std::move(schedule)) {}

  std::size_t arm_count() const override { return arms_.size(); }
  std::int64_t initial_pulls() const override { return schedule_.n0(); }
  std::string family_name() const override { return "coverage"; }
  SufficientStats initial_stats(std::size_t) const override {
    return coverage::CoverageStats{};
  }
  double sample(std::size_t arm, double u) const override {
    return arms_[arm].support.quantile(u);
  }
  double true_score(std::size_t arm) const override { return arms_[arm].support.measure(); }
  double divergence_floor(std::size_t arm, double rho) const override {
    return coverage::m(arms_[arm].support.measure(), rho);
  }
  double index(std::size_t arm, const SufficientStats& stats, std::int64_t n,
               RunContext* ctx) const override {
    const auto& cov = std::get<coverage::CoverageStats>(stats);
    // ctx is this policy's own context (engine hands back what begin_run
    // produced); one-off callers pass none and take the full re-bin path.
    if (auto* mine = dynamic_cast<CoverageContext*>(ctx)) {
      double measure_hat = mine->bins[arm].measure(cov, schedule_);
      return coverage::index_from_measure(measure_hat, cov.count, n, schedule_);
    }
    return coverage::index(cov, n, schedule_);
  }
  std::unique_ptr<RunContext> begin_run() const override {
    auto ctx = std::make_unique<CoverageContext>();
    ctx->bins.resize(arms_.size());
    return ctx;
  }
  const coverage::PartitionSchedule& schedule() const { return schedule_; }

 private:
  std::vector<CoverageArm> arms_;
  coverage::PartitionSchedule schedule_;
};

class IntervalPolicy final : public ModelPolicy {
 public:
  explicit IntervalPolicy(std::vector<IntervalArm> arm_list) : arms_(std::move(arm_list)) {
    for (const IntervalArm& arm : arms_) {
      interval::validate(arm.params);
      if (arm.score.tag() != arms_[0].score.tag()) {
        throw ValidationError("interval: arms must share one score functional");
      }
    }
  }

  std::size_t arm_count() const override { return arms_.size(); }
  std::int64_t initial_pulls() const override { return interval::kInitialPulls; }
  std::string family_name() const override { return "interval"; }
  SufficientStats initial_stats(std::size_t) const override {
    return interval::IntervalStats{};
  }
  double sample(std::size_t arm, double u) const override {
    return interval::quantile(arms_[arm].params, u);
  }
  double true_score(std::size_t arm) const override {
    return arms_[arm].score.value(arms_[arm].params.low, arms_[arm].params.high);
  }
  double divergence_floor(std::size_t arm, double rho) const override {
    return interval::m(arms_[arm].params, rho, arms_[arm].score);
  }
  double index(std::size_t arm, const SufficientStats& stats, std::int64_t n,
               RunContext*) const override {
    return interval::index(std::get<interval::IntervalStats>(stats), n, arms_[arm].score);
  }

 private:
  std::vector<IntervalArm> arms_;
};

class NormalChkPolicy final : public ModelPolicy {
 public:
  explicit NormalChkPolicy(std::vector<NormalChkArm> arm_list)
      : arms_(std::move(arm_list)) {
    for (const NormalChkArm& arm : arms_) normal::validate(arm.params);
  }

  std::size_t arm_count() const override { return arms_.size(); }
  std::int64_t initial_pulls() const override { return normal::kInitialPullsChk; }
  std::string family_name() const override { return "normal_chk"; }
  SufficientStats initial_stats(std::size_t) const override { return normal::NormalStats{}; }
  double sample(std::size_t arm, double u) const override {
    return normal::quantile(arms_[arm].params, u);
  }
  double true_score(std::size_t arm) const override { return arms_[arm].params.mu; }
  double divergence_floor(std::size_t arm, double rho) const override {
    return normal::m_chk(arms_[arm].params, rho);
  }
  double index(std::size_t, const SufficientStats& stats, std::int64_t n,
               RunContext*) const override {
    return normal::index_chk(std::get<normal::NormalStats>(stats), n);
  }

 private:
  std::vector<NormalChkArm> arms_;
};

class NormalVarPolicy final : public ModelPolicy {
 public:
  explicit NormalVarPolicy(std::vector<NormalVarArm> arm_list)
      : arms_(std::move(arm_list)) {
    for (const NormalVarArm& arm : arms_) normal::validate(arm.params);
  }

  std::size_t arm_count() const override { return arms_.size(); }
  std::int64_t initial_pulls() const override { return normal::kInitialPullsChk; }
  std::string family_name() const override { return "normal_var"; }
  SufficientStats initial_stats(std::size_t) const override { return normal::NormalStats{}; }
  double sample(std::size_t arm, double u) const override {
    return normal::quantile(arms_[arm].params, u);
  }
  double true_score(std::size_t arm) const override {
    double s = arms_[arm].params.sigma;
    return 1.0 / (s * s);
  }
  double divergence_floor(std::size_t arm, double rho) const override {
    return normal::m_var(arms_[arm].params, rho);
  }
  double index(std::size_t, const SufficientStats& stats, std::int64_t n,
               RunContext*) const override {
    return normal::index_var(std::get<normal::NormalStats>(stats), n);
  }

 private:
  std::vector<NormalVarArm> arms_;
};

class NormalThrPolicy final : public ModelPolicy {
 public:
  NormalThrPolicy(std::vector<NormalThrArm> arm_list, double kappa)
      : arms_(std::move(arm_list)), kappa_(kappa) {
    if (!std::isfinite(kappa_)) throw ValidationError("normal_thr: kappa must be finite");
    for (const NormalThrArm& arm : arms_) {
      normal::validate({arm.mu, arm.sigma_known});
    }
  }

  std::size_t arm_count() const override { return arms_.size(); }
  std::int64_t initial_pulls() const override { return normal::kInitialPullsThr; }
  std::string family_name() const override { return "normal_thr"; }
  SufficientStats initial_stats(std::size_t) const override { return normal::NormalStats{}; }
  double sample(std::size_t arm, double u) const override {
    return normal::quantile({arms_[arm].mu, arms_[arm].sigma_known}, u);
  }
  double true_score(std::size_t arm) const override {
    return normal::threshold_score(arms_[arm].mu, spec(arm));
  }
  double divergence_floor(std::size_t arm, double rho) const override {
    return normal::m_threshold(arms_[arm].mu, spec(arm), rho);
  }
  double index(std::size_t arm, const SufficientStats& stats, std::int64_t n,
               RunContext*) const override {
    return normal::index_threshold(std::get<normal::NormalStats>(stats), n, spec(arm));
  }

 private:
  normal::ThresholdSpec spec(std::size_t arm) const {
    return {kappa_, arms_[arm].sigma_known};
  }
  std::vector<NormalThrArm> arms_;
  double kappa_ = 0.0;
};

template <typename Arm>
std::vector<Arm> collect(std::vector<ArmModel>& arm_models) {
  std::vector<Arm> out;
  out.reserve(arm_models.size());
  for (ArmModel& m : arm_models) {
    Arm* arm = std::get_if<Arm>(&m);
    if (arm == nullptr) throw ValidationError("make_policy: arms must share one family");
    out.push_back(std::move(*arm));
  }
  return out;
}

}  // namespace

std::unique_ptr<engine::ModelPolicy> make_policy(std::vector<ArmModel> arm_models,
                                                 SharedModelConfig shared) {
  if (arm_models.size() < 2) throw ValidationError("make_policy: need at least 2 arms");
  bool is_coverage = std::holds_alternative<CoverageArm>(arm_models[0]);
  bool is_threshold = std::holds_alternative<NormalThrArm>(arm_models[0]);
  if (shared.kappa.has_value() && !is_threshold) {
    throw ValidationError("make_policy: kappa only applies to normal_thr");
  }
  if (shared.d_schedule.has_value() && !is_coverage) {
    throw ValidationError("make_policy: d_schedule only applies to coverage");
  }

  if (std::holds_alternative<ParetoArm>(arm_models[0])) {
    return std::make_unique<ParetoPolicy>(collect<ParetoArm>(arm_models));
  }
  if (is_coverage) {
    coverage::PartitionSchedule schedule =
        shared.d_schedule.value_or(coverage::PartitionSchedule::sqrt_schedule());
    return std::make_unique<CoveragePolicy>(collect<CoverageArm>(arm_models),
                                            std::move(schedule));
  }
  if (std::holds_alternative<IntervalArm>(arm_models[0])) {
    return std::make_unique<IntervalPolicy>(collect<IntervalArm>(arm_models));
  }
  if (std::holds_alternative<NormalChkArm>(arm_models[0])) {
    return std::make_unique<NormalChkPolicy>(collect<NormalChkArm>(arm_models));
  }
  if (std::holds_alternative<NormalVarArm>(arm_models[0])) {
    return std::make_unique<NormalVarPolicy>(collect<NormalVarArm>(arm_models));
  }
  if (!shared.kappa.has_value()) {
    throw ValidationError("make_policy: normal_thr requires a shared kappa");
  }
  return std::make_unique<NormalThrPolicy>(collect<NormalThrArm>(arm_models),
                                           *shared.kappa);
}

}  // namespace banditlab::arms
