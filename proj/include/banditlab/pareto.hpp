#pragma once

#include <cstdint>
#include <functional>
#include <limits>

namespace banditlab::pareto {

// Pareto(alpha, beta): density alpha*beta^alpha / x^(alpha+1) on [beta, inf).
// The family is restricted to shapes above a known floor ell; scores built
// from a() may blow up as alpha approaches the floor.
struct ParetoParams {
  double alpha = 0.0;
  double beta = 0.0;
  double floor_l = 0.0;
};

void validate(const ParetoParams& p);

enum class ScoreTag { mean, tail_exponent, median, custom };

// Separable score s(alpha, beta) = a(alpha) * b(beta) with a decreasing and
// invertible on the family and b nondecreasing.  a_inverse must invert a on
// the declared range; the round trip is validated at construction.
class SeparableScore {
 public:
  static SeparableScore mean_score();           // a = alpha/(alpha-1), b = beta, ell = 1
  static SeparableScore tail_exponent_score();  // a = 1/alpha,         b = 1,    ell = 0
  static SeparableScore median_score();         // a = 2^(1/alpha),     b = beta, ell = 0
  static SeparableScore custom(std::function<double(double)> a,
                               std::function<double(double)> a_inverse,
                               std::function<double(double)> b, double floor_l,
                               double range_lo, double range_hi);

  double a(double alpha) const { return a_(alpha); }
  double a_inverse(double y) const;  // rejects y outside the declared range
  double b(double beta) const { return b_(beta); }
  double value(const ParetoParams& p) const { return a_(p.alpha) * b_(p.beta); }
  double floor_l() const { return floor_l_; }
  ScoreTag tag() const { return tag_; }

 private:
  SeparableScore() = default;
  std::function<double(double)> a_, a_inverse_, b_;
  double floor_l_ = 0.0;
  double range_lo_ = 0.0;
  double range_hi_ = 0.0;
  ScoreTag tag_ = ScoreTag::custom;
};

// Sufficient statistics: sample count, running minimum, and the log-spacings
// sum about the current minimum.  log_sum is rebased whenever a new sample
// lowers the minimum.
struct ParetoStats {
  std::int64_t count = 0;
  double min_sample = std::numeric_limits<double>::infinity();
  double log_sum = 0.0;  // sum over samples of ln(x / min_sample)
};

struct ParetoEstimate {
  double alpha_hat = 0.0;
  double beta_hat = 0.0;
};

void update(ParetoStats& stats, double x);

// beta_hat = min sample, alpha_hat = (t-1)/log_sum.  Requires count >= 2;
// all-equal samples (log_sum == 0) raise DegenerateDataError.
ParetoEstimate estimate(const ParetoStats& stats);

double quantile(const ParetoParams& p, double u);  // beta * (1-u)^(-1/alpha)

// KL divergence within the floor-0 family; +infinity when g's support does
// not contain f's (beta_g > beta_f).
double kl(const ParetoParams& f, const ParetoParams& g);

// Minimal KL distance from f to {g : s(g) > rho}; 0 when rho <= s(f), else
// w - ln w - 1 with w = a_inverse(rho / b(beta)) / alpha.
double m(const ParetoParams& f, double rho, const SeparableScore& score);

// UCB index: w = alpha_hat * L^-(ln n / (t-2)); +infinity when w falls at or
// below the family floor, else b(beta_hat) * a(w).  Requires t >= 3.
double index(const ParetoStats& stats, std::int64_t n, const SeparableScore& score);

inline constexpr int kInitialPulls = 3;  // n0
inline constexpr int kDriftOffset = 2;   // d~(t)

}  // namespace banditlab::pareto
