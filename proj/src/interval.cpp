#include "banditlab/interval.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "banditlab/errors.hpp"

namespace banditlab::interval {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void validate(const IntervalParams& p) {
  if (!(std::isfinite(p.low) && std::isfinite(p.high) && p.low < p.high)) {
    throw ValidationError("interval: need finite low < high");
  }
}

MonotoneScore2D MonotoneScore2D::mean_score() {
  MonotoneScore2D s;
  s.s_ = [](double a, double b) { return 0.5 * (a + b); };
  s.tag_ = ScoreTag::mean;
  return s;
}

MonotoneScore2D MonotoneScore2D::custom(std::function<double(double, double)> s, double a_lo,
                                        double a_hi, double b_lo, double b_hi) {
  if (!s) throw ValidationError("interval score: callable required");
  if (!(a_lo < a_hi && b_lo < b_hi)) throw ValidationError("interval score: bad domain");
  const double h = 1e-3;
  for (int i = 0; i < 32; ++i) {
    for (int j = 0; j < 32; ++j) {
      double a = a_lo + (a_hi - a_lo) * i / 31.0;
      double b = b_lo + (b_hi - b_lo) * j / 31.0;
      double base = s(a, b);
      if (!(s(a + h, b) > base) || !(s(a, b + h) > base)) {
        throw ValidationError("interval score: not increasing at (a,b)=(" +
                              std::to_string(a) + "," + std::to_string(b) + ")");
      }
    }
  }
  MonotoneScore2D m;
  m.s_ = std::move(s);
  m.tag_ = ScoreTag::custom;
  return m;
}

void update(IntervalStats& stats, double x) {
  if (!std::isfinite(x)) throw ValidationError("interval update: sample must be finite");
  stats.sample_min = std::min(stats.sample_min, x);
  stats.sample_max = std::max(stats.sample_max, x);
  stats.count += 1;
}

IntervalParams estimate(const IntervalStats& stats) {
  if (stats.count < 2) throw ValidationError("interval estimate: need at least 2 samples");
  if (!(stats.sample_min < stats.sample_max)) {
    throw DegenerateDataError("interval estimate: all samples equal");
  }
  return {stats.sample_min, stats.sample_max};
}

double quantile(const IntervalParams& p, double u) {
  validate(p);
  if (!(u > 0.0 && u < 1.0)) throw ValidationError("interval quantile: u outside (0,1)");
  return p.low + u * (p.high - p.low);
}

double kl(const IntervalParams& f, const IntervalParams& g) {
  validate(f);
  validate(g);
  if (g.low > f.low || g.high < f.high) return kInf;
  return std::log((g.high - g.low) / (f.high - f.low));
}

double m(const IntervalParams& f, double rho, const MonotoneScore2D& score) {
  validate(f);
  if (!std::isfinite(rho)) throw ValidationError("interval m: rho must be finite");
  if (rho <= score.value(f.low, f.high)) return 0.0;

  // Doubling bracket for the smallest b~ >= b with s(a, b~) >= rho.
  double span = f.high - f.low;
  double lo = f.high;
  double hi = f.high;
  double step = span;
  const double cap = std::ldexp(span, 60);
  while (score.value(f.low, hi) < rho) {
    if (step > cap) {
      throw UnattainableScoreError("interval m: score never reaches rho=" +
                                   std::to_string(rho));
    }
    lo = hi;
    hi = f.high + step;
    step *= 2.0;
  }
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (score.value(f.low, mid) >= rho) {
      hi = mid;
    } else {
      lo = mid;
    }
    if (hi - lo <= 1e-12 * std::max(1.0, std::abs(hi))) break;
  }
  return std::log(hi - f.low) - std::log(span);
}

double index(const IntervalStats& stats, std::int64_t n, const MonotoneScore2D& score) {
  if (stats.count < 3) throw ValidationError("interval index: need t >= 3");
  if (n < 1) throw ValidationError("interval index: need n >= 1");
  IntervalParams e = estimate(stats);
  double inflate = std::pow(static_cast<double>(n),
                            1.0 / static_cast<double>(stats.count - kDriftOffset));
  return score.value(e.low, e.low + inflate * (e.high - e.low));
}

}  // namespace banditlab::interval
