#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "banditlab/engine.hpp"

namespace banditlab::arms {

// One arm = one unknown distribution plus (where applicable) the score
// functional the experiment ranks arms by.
struct ParetoArm {
  pareto::ParetoParams params;
  pareto::SeparableScore score;
};

struct CoverageArm {
  coverage::SupportSet support;
};

struct IntervalArm {
  interval::IntervalParams params;
  interval::MonotoneScore2D score;
};

struct NormalChkArm {
  normal::NormalParams params;  // score = mu
};

struct NormalVarArm {
  normal::NormalParams params;  // score = 1/sigma^2; mu affects sampling only
};

struct NormalThrArm {
  double mu = 0.0;           // unknown mean
  double sigma_known = 0.0;  // known, may differ across arms
};

using ArmModel = std::variant<ParetoArm, CoverageArm, IntervalArm, NormalChkArm,
                              NormalVarArm, NormalThrArm>;

// Experiment-wide knobs that are not per-arm: the threshold kappa (normal_thr
// only) and the partition schedule (coverage only).  Setting a knob for a
// family that does not use it is rejected.
struct SharedModelConfig {
  std::optional<double> kappa;
  std::optional<coverage::PartitionSchedule> d_schedule;
};

// Builds the family policy for a homogeneous arm list (>= 2 arms, all the
// same family, pareto/interval arms sharing one score functional).
std::unique_ptr<engine::ModelPolicy> make_policy(std::vector<ArmModel> arm_models,
                                                 SharedModelConfig shared = {});

}  // namespace banditlab::arms
