#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace banditlab::coverage {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Finite disjoint union of closed sub-intervals of [0,1], excluding the full
// interval: the sampled distribution is uniform over the union and the score
// is the covered measure.
class SupportSet {
 public:
  explicit SupportSet(std::vector<Interval> intervals);

  double measure() const { return measure_; }
  const std::vector<Interval>& intervals() const { return intervals_; }
  double quantile(double u) const;  // piecewise-linear inverse CDF, u in (0,1)

 private:
  std::vector<Interval> intervals_;
  double measure_ = 0.0;
};

// Partition resolution d(t): positive, integer, nondecreasing, unbounded,
// o(t).  The index uses the inflated offset d~(t) = d(t) + 1 and the initial
// phase length n0 = min{n : n > d~(n)}.
class PartitionSchedule {
 public:
  static PartitionSchedule sqrt_schedule();  // d(t) = ceil(sqrt(t))
  static PartitionSchedule log2_schedule();  // d(t) = max(1, ceil(log2(t+1)))

  int d(std::int64_t t) const { return d_(t); }
  int d_tilde(std::int64_t t) const { return d_(t) + 1; }
  int n0() const { return n0_; }
  const std::string& name() const { return name_; }

 private:
  PartitionSchedule(std::function<int(std::int64_t)> d, std::string name);
  std::function<int(std::int64_t)> d_;
  int n0_ = 0;
  std::string name_;
};

// All observations are retained: the estimator re-bins them whenever the
// partition resolution changes.
struct CoverageStats {
  std::int64_t count = 0;
  std::vector<double> samples;
};

void update(CoverageStats& stats, double x);  // x must lie in [0,1]

struct CoverageEstimate {
  double measure = 0.0;            // occupied cells / d(t)
  int cells = 0;                   // d(t)
  std::vector<bool> occupied;      // per-cell occupancy bitmask
};

CoverageEstimate estimate(const CoverageStats& stats, const PartitionSchedule& schedule);

// KL between uniforms on measures |S| and |T|: ln(|T|/|S|) when S is a subset
// of T, +infinity otherwise.
double kl(double s_measure, double t_measure, bool subset);

// Minimal KL to a support of measure above rho: ln(rho/measure), 0 below.
double m(double measure, double rho);

// UCB index min(|S_hat_t| * n^(1/(t - d~(t))), 1); requires t > d~(t).
double index(const CoverageStats& stats, std::int64_t n, const PartitionSchedule& schedule);

// Same index with the binned measure already in hand (run-loop fast path).
double index_from_measure(double measure_hat, std::int64_t t, std::int64_t n,
                          const PartitionSchedule& schedule);

// Incremental mirror of estimate() for the run loop: bins only the samples
// appended since the last call and re-bins from scratch when d(t) changes.
// Agreement with estimate() is asserted in tests.
class IncrementalBinning {
 public:
  double measure(const CoverageStats& stats, const PartitionSchedule& schedule);

 private:
  std::int64_t binned_ = 0;
  int cells_ = 0;
  int occupied_count_ = 0;
  std::vector<char> occupied_;
};

}  // namespace banditlab::coverage
