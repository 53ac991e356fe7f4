#include "banditlab/coverage.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <utility>

#include "banditlab/errors.hpp"

namespace banditlab::coverage {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

inline int cell_of(double x, int d) {
  int c = static_cast<int>(x * d);
  return c >= d ? d - 1 : c;  // x == 1 lands in the last cell
}
}  // namespace

SupportSet::SupportSet(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
  if (intervals_.empty()) throw ValidationError("coverage support: no intervals");
  double prev_hi = -1.0;
  for (const auto& iv : intervals_) {
    if (!(std::isfinite(iv.lo) && std::isfinite(iv.hi))) {
      throw ValidationError("coverage support: endpoints must be finite");
    }
    if (!(0.0 <= iv.lo && iv.lo < iv.hi && iv.hi <= 1.0)) {
      throw ValidationError("coverage support: intervals must satisfy 0 <= lo < hi <= 1");
    }
    if (iv.lo <= prev_hi) {
      throw ValidationError("coverage support: intervals must be sorted and disjoint");
    }
    prev_hi = iv.hi;
    measure_ += iv.hi - iv.lo;
  }
  if (!(measure_ > 0.0 && measure_ < 1.0)) {
    throw ValidationError("coverage support: total measure must lie strictly in (0,1)");
  }
}

double SupportSet::quantile(double u) const {
  if (!(u > 0.0 && u < 1.0)) throw ValidationError("coverage quantile: u outside (0,1)");
  double target = u * measure_;
  for (const auto& iv : intervals_) {
    double len = iv.hi - iv.lo;
    if (target <= len) return iv.lo + target;
    target -= len;
  }
  return intervals_.back().hi;  // float slack; u < 1 keeps target within the union
}

PartitionSchedule::PartitionSchedule(std::function<int(std::int64_t)> d, std::string name)
    : d_(std::move(d)), name_(std::move(name)) {
  int n = 1;
  while (!(n > d_(n) + 1)) ++n;
  n0_ = n;
}

PartitionSchedule PartitionSchedule::sqrt_schedule() {
  return PartitionSchedule(
      [](std::int64_t t) {
        auto s = static_cast<std::int64_t>(std::sqrt(static_cast<double>(t)));
        while (s * s < t) ++s;
        while (s > 1 && (s - 1) * (s - 1) >= t) --s;
        return static_cast<int>(s);
      },
      "sqrt");
}

PartitionSchedule PartitionSchedule::log2_schedule() {
  return PartitionSchedule(
      [](std::int64_t t) {
        // ceil(log2(t+1)) == bit_width(t) for t >= 1
        int w = std::bit_width(static_cast<std::uint64_t>(t));
        return std::max(1, w);
      },
      "log2");
}

void update(CoverageStats& stats, double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw ValidationError("coverage update: samples must lie in [0,1]");
  }
  stats.samples.push_back(x);
  stats.count += 1;
}

CoverageEstimate estimate(const CoverageStats& stats, const PartitionSchedule& schedule) {
  if (stats.count < 1) throw ValidationError("coverage estimate: need at least 1 sample");
  CoverageEstimate e;
  e.cells = schedule.d(stats.count);
  e.occupied.assign(e.cells, false);
  int hit = 0;
  for (double x : stats.samples) {
    int c = cell_of(x, e.cells);
    if (!e.occupied[c]) {
      e.occupied[c] = true;
      ++hit;
    }
  }
  e.measure = static_cast<double>(hit) / e.cells;
  return e;
}

double kl(double s_measure, double t_measure, bool subset) {
  if (!(s_measure > 0.0 && s_measure < 1.0 && t_measure > 0.0 && t_measure < 1.0)) {
    throw ValidationError("coverage kl: measures must lie strictly in (0,1)");
  }
  if (!subset) return kInf;
  return std::log(t_measure / s_measure);
}

double m(double measure, double rho) {
  if (!(measure > 0.0 && measure < 1.0)) {
    throw ValidationError("coverage m: measure must lie strictly in (0,1)");
  }
  if (!(rho <= 1.0)) throw ValidationError("coverage m: rho must not exceed 1");
  if (rho <= measure) return 0.0;
  return std::log(rho / measure);
}

double index_from_measure(double measure_hat, std::int64_t t, std::int64_t n,
                          const PartitionSchedule& schedule) {
  if (!(t > schedule.d_tilde(t))) {
    throw ValidationError("coverage index: need t > d~(t)");
  }
  if (n < 1) throw ValidationError("coverage index: need n >= 1");
  double inflated = measure_hat * std::pow(static_cast<double>(n),
                                           1.0 / static_cast<double>(t - schedule.d_tilde(t)));
  return std::min(inflated, 1.0);
}

double index(const CoverageStats& stats, std::int64_t n, const PartitionSchedule& schedule) {
  if (!(stats.count > schedule.d_tilde(stats.count))) {
    throw ValidationError("coverage index: need t > d~(t)");
  }
  return index_from_measure(estimate(stats, schedule).measure, stats.count, n, schedule);
}

double IncrementalBinning::measure(const CoverageStats& stats, const PartitionSchedule& schedule) {
  int d = schedule.d(stats.count);
  if (d != cells_) {
    cells_ = d;
    occupied_.assign(d, 0);
    occupied_count_ = 0;
    binned_ = 0;
  }
  for (; binned_ < stats.count; ++binned_) {
    int c = cell_of(stats.samples[static_cast<std::size_t>(binned_)], cells_);
    if (!occupied_[c]) {
      occupied_[c] = 1;
      ++occupied_count_;
    }
  }
  return static_cast<double>(occupied_count_) / cells_;
}

}  // namespace banditlab::coverage
