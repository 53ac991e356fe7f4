#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "banditlab/arms.hpp"

namespace banditlab::oracles {

// Search box over a family's free parameters (one or two, possibly in
// transformed coordinates) with the score-threshold constraint attached.
// The reference minimizer runs a coarse full-factorial grid and then 60
// halving scans per coordinate, breaking value ties toward lower parameters.
struct FamilyGrid {
  std::vector<double> lo;
  std::vector<double> hi;
  std::function<double(const std::vector<double>&)> objective;  // minimized
  std::function<bool(const std::vector<double>&)> feasible;
};

struct GridSearchResult {
  bool found = false;
  std::vector<double> point;
  double value = 0.0;
};

GridSearchResult grid_search_min(const FamilyGrid& grid, int resolution);

// Brute-force M_f(rho): minimal KL from f to {g in family : s(g) > rho},
// the strict constraint realized as s(g) >= rho + 1e-12.  Throws
// UnattainableScoreError when no feasible parameter exists.
double m_oracle(const arms::ArmModel& f, double rho,
                const arms::SharedModelConfig& shared = {}, int grid_resolution = 64);

// Brute-force companion C_f(radius): the supremum score over the closed KL
// ball {g : KL(f_hat, g) <= radius}, found by bisecting rho against
// m_oracle; +infinity when the score is unbounded inside the ball.
double index_oracle(const arms::ArmModel& f_hat, double radius,
                    const arms::SharedModelConfig& shared = {}, int grid_resolution = 64);

// Family dispatchers used by cross-checks and the CLI.
double true_score(const arms::ArmModel& arm, const arms::SharedModelConfig& shared = {});
double closed_form_m(const arms::ArmModel& f, double rho,
                     const arms::SharedModelConfig& shared = {});
// Closed-form index as a function of the exploration radius ln n/(t - d~(t)).
double closed_form_index(const arms::ArmModel& f_hat, double radius,
                         const arms::SharedModelConfig& shared = {});

// Exact CDF of the normalized range lambda = (max-min)/(b-a) of t uniform
// draws: (t(1-lambda)+lambda) * lambda^(t-1).
double range_cdf(std::int64_t t, double lambda);

enum class BoundKind { gamma, chi2 };
enum class Tail { lower, upper };

// Chernoff bounds: P(Gamma(t,1) lower/upper tail at ratio*t) <= (ratio *
// e^(1-ratio))^t, and P(chi2_t tail at ratio*t) <= (ratio * e^(1-ratio))^(t/2).
// The ratio must sit on the requested side of 1.
double chernoff_bound(BoundKind kind, std::int64_t t, double ratio, Tail tail);

// Standard normal tail: P(Z > z) <= exp(-z^2/2)/2 for z >= 0.
double normal_tail_bound(double z);

// Regularized lower incomplete gamma P(shape, x): series for small x,
// continued fraction otherwise.
double gamma_cdf(double x, double shape);

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);
double ks_critical_01(std::size_t draws);  // asymptotic 1% point, 1.63/sqrt(m)

double pearson_correlation(const std::vector<double>& xs, const std::vector<double>& ys);

// Closed form vs search oracle over a fixed per-family parameter grid.  Each
// grid point compares the divergence floor at several score targets and the
// index at several radii; infinities on both sides count as exact agreement.
struct OracleCheckResult {
  int m_comparisons = 0;
  int index_comparisons = 0;
  double max_m_error = 0.0;
  double max_index_error = 0.0;
};

OracleCheckResult oracle_self_check(const std::string& family, int grid_resolution = 64);

}  // namespace banditlab::oracles
