#include "banditlab/pareto.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "banditlab/errors.hpp"
#include "banditlab/specfun.hpp"

namespace banditlab::pareto {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void validate(const ParetoParams& p) {
  if (!(std::isfinite(p.alpha) && std::isfinite(p.beta) && std::isfinite(p.floor_l))) {
    throw ValidationError("pareto: parameters must be finite");
  }
  if (!(p.floor_l >= 0.0)) throw ValidationError("pareto: floor must be nonnegative");
  if (!(p.alpha > p.floor_l)) {
    throw ValidationError("pareto: alpha must exceed the family floor " +
                          std::to_string(p.floor_l));
  }
  if (!(p.beta > 0.0)) throw ValidationError("pareto: beta must be positive");
}

SeparableScore SeparableScore::mean_score() {
  SeparableScore s;
  s.a_ = [](double alpha) { return alpha / (alpha - 1.0); };
  s.a_inverse_ = [](double y) { return y / (y - 1.0); };
  s.b_ = [](double beta) { return beta; };
  s.floor_l_ = 1.0;
  s.range_lo_ = 1.0;  // a maps (1,inf) onto (1,inf), exclusive
  s.range_hi_ = kInf;
  s.tag_ = ScoreTag::mean;
  return s;
}

SeparableScore SeparableScore::tail_exponent_score() {
  SeparableScore s;
  s.a_ = [](double alpha) { return 1.0 / alpha; };
  s.a_inverse_ = [](double y) { return 1.0 / y; };
  s.b_ = [](double) { return 1.0; };
  s.floor_l_ = 0.0;
  s.range_lo_ = 0.0;
  s.range_hi_ = kInf;
  s.tag_ = ScoreTag::tail_exponent;
  return s;
}

SeparableScore SeparableScore::median_score() {
  SeparableScore s;
  s.a_ = [](double alpha) { return std::exp2(1.0 / alpha); };
  s.a_inverse_ = [](double y) { return M_LN2 / std::log(y); };
  s.b_ = [](double beta) { return beta; };
  s.floor_l_ = 0.0;
  s.range_lo_ = 1.0;  // a maps (0,inf) onto (1,inf)
  s.range_hi_ = kInf;
  s.tag_ = ScoreTag::median;
  return s;
}

SeparableScore SeparableScore::custom(std::function<double(double)> a,
                                      std::function<double(double)> a_inverse,
                                      std::function<double(double)> b, double floor_l,
                                      double range_lo, double range_hi) {
  if (!a || !a_inverse || !b) throw ValidationError("pareto score: callables required");
  if (!(floor_l >= 0.0) || !(range_lo < range_hi)) {
    throw ValidationError("pareto score: bad floor or range");
  }
  SeparableScore s;
  s.a_ = std::move(a);
  s.a_inverse_ = std::move(a_inverse);
  s.b_ = std::move(b);
  s.floor_l_ = floor_l;
  s.range_lo_ = range_lo;
  s.range_hi_ = range_hi;
  s.tag_ = ScoreTag::custom;
  // Round-trip check on a grid spanning the declared range (finite part).
  double lo = std::isfinite(range_lo) ? range_lo : 1e-6;
  double hi = std::isfinite(range_hi) ? range_hi : lo + 1e6;
  for (int i = 1; i < 16; ++i) {
    double y = lo + (hi - lo) * i / 16.0;
    double back = s.a_(s.a_inverse_(y));
    if (!(std::abs(back - y) <= 1e-10 * std::max(1.0, std::abs(y)))) {
      throw ValidationError("pareto score: a(a_inverse(y)) round trip fails at y=" +
                            std::to_string(y));
    }
  }
  return s;
}

double SeparableScore::a_inverse(double y) const {
  if (!(y > range_lo_ && y < range_hi_)) {
    throw ValidationError("pareto score: value " + std::to_string(y) +
                          " outside score range (" + std::to_string(range_lo_) + ", " +
                          std::to_string(range_hi_) + ")");
  }
  return a_inverse_(y);
}

void update(ParetoStats& stats, double x) {
  if (!(std::isfinite(x)) || !(x > 0.0)) {
    throw ValidationError("pareto update: samples must be finite and positive");
  }
  if (stats.count == 0) {
    stats.count = 1;
    stats.min_sample = x;
    stats.log_sum = 0.0;
    return;
  }
  if (x < stats.min_sample) {
    // Rebase the log spacings onto the new minimum.
    stats.log_sum += static_cast<double>(stats.count) * std::log(stats.min_sample / x);
    stats.min_sample = x;
  }
  stats.log_sum += std::log(x / stats.min_sample);
  stats.count += 1;
}

ParetoEstimate estimate(const ParetoStats& stats) {
  if (stats.count < 2) throw ValidationError("pareto estimate: need at least 2 samples");
  if (!(stats.log_sum > 0.0)) {
    throw DegenerateDataError("pareto estimate: all samples equal");
  }
  return {static_cast<double>(stats.count - 1) / stats.log_sum, stats.min_sample};
}

double quantile(const ParetoParams& p, double u) {
  validate(p);
  if (!(u > 0.0 && u < 1.0)) throw ValidationError("pareto quantile: u outside (0,1)");
  return p.beta * std::pow(1.0 - u, -1.0 / p.alpha);
}

double kl(const ParetoParams& f, const ParetoParams& g) {
  if (!(f.alpha > 0.0 && f.beta > 0.0 && g.alpha > 0.0 && g.beta > 0.0)) {
    throw ValidationError("pareto kl: parameters must be positive");
  }
  if (g.beta > f.beta) return kInf;
  double r = g.alpha / f.alpha;
  return r - std::log(r) - 1.0 + g.alpha * std::log(f.beta / g.beta);
}

double m(const ParetoParams& f, double rho, const SeparableScore& score) {
  validate(f);
  if (!std::isfinite(rho)) throw ValidationError("pareto m: rho must be finite");
  if (rho <= score.value(f)) return 0.0;
  double w = score.a_inverse(rho / score.b(f.beta)) / f.alpha;
  return w - std::log(w) - 1.0;
}

double index(const ParetoStats& stats, std::int64_t n, const SeparableScore& score) {
  if (stats.count < 3) throw ValidationError("pareto index: need t >= 3");
  if (n < 1) throw ValidationError("pareto index: need n >= 1");
  ParetoEstimate e = estimate(stats);
  double radius = std::log(static_cast<double>(n)) / static_cast<double>(stats.count - kDriftOffset);
  double w = e.alpha_hat * specfun::l_minus(radius);
  if (w <= score.floor_l()) return kInf;
  return score.b(e.beta_hat) * score.a(w);
}

}  // namespace banditlab::pareto
