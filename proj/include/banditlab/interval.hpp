#pragma once

#include <cstdint>
#include <functional>
#include <limits>

namespace banditlab::interval {

// Uniform distribution on [low, high].
struct IntervalParams {
  double low = 0.0;
  double high = 0.0;
};

void validate(const IntervalParams& p);

enum class ScoreTag { mean, custom };

// Score s(a, b) increasing in both endpoints.  Custom scores are
// monotonicity-checked on a grid over their declared domain at construction;
// a violation aborts configuration.
class MonotoneScore2D {
 public:
  static MonotoneScore2D mean_score();  // (a + b) / 2
  static MonotoneScore2D custom(std::function<double(double, double)> s, double a_lo,
                                double a_hi, double b_lo, double b_hi);

  double value(double a, double b) const { return s_(a, b); }
  ScoreTag tag() const { return tag_; }

 private:
  MonotoneScore2D() = default;
  std::function<double(double, double)> s_;
  ScoreTag tag_ = ScoreTag::custom;
};

struct IntervalStats {
  std::int64_t count = 0;
  double sample_min = std::numeric_limits<double>::infinity();
  double sample_max = -std::numeric_limits<double>::infinity();
};

void update(IntervalStats& stats, double x);

// Estimate is (min, max); count >= 2 required, all-equal samples raise
// DegenerateDataError.
IntervalParams estimate(const IntervalStats& stats);

double quantile(const IntervalParams& p, double u);

// ln((b~-a~)/(b-a)) when g's support contains f's, else +infinity.
double kl(const IntervalParams& f, const IntervalParams& g);

// Minimal KL to a superset-support uniform scoring above rho: finds the
// smallest b~ >= b with s(a, b~) >= rho by doubling bracket plus bisection.
double m(const IntervalParams& f, double rho, const MonotoneScore2D& score);

// UCB index s(a_hat, a_hat + n^(1/(t-2)) * (b_hat - a_hat)); requires t >= 3.
double index(const IntervalStats& stats, std::int64_t n, const MonotoneScore2D& score);

inline constexpr int kInitialPulls = 3;  // n0
inline constexpr int kDriftOffset = 2;   // d~(t)

}  // namespace banditlab::interval
