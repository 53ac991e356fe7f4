#pragma once

#include <cstdint>

namespace banditlab::normal {

struct NormalParams {
  double mu = 0.0;
  double sigma = 0.0;  // standard deviation, > 0
};

void validate(const NormalParams& p);

// Welford accumulator; sigma_hat^2 = m2 / (count - 1).
struct NormalStats {
  std::int64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;  // sum of squared deviations from the running mean
};

void update(NormalStats& stats, double x);
void merge(NormalStats& into, const NormalStats& other);
double variance(const NormalStats& stats);  // count >= 2; clamped at 0

// Threshold submodel: per-arm known sigma, experiment-wide threshold kappa;
// the score is the tail mass above kappa.
struct ThresholdSpec {
  double kappa = 0.0;
  double known_sigma = 0.0;
};

double quantile(const NormalParams& p, double u);
double kl(const NormalParams& f, const NormalParams& g);

// Mean-score submodel (unknown mean and variance).
double m_chk(const NormalParams& f, double rho);
double index_chk(const NormalStats& stats, std::int64_t n);  // t >= 3

// Variance submodel (common unknown mean, score = 1/sigma^2).
double m_var(const NormalParams& f, double rho);             // rho > 0
double index_var(const NormalStats& stats, std::int64_t n);  // t >= 3, m2 > 0

// Threshold submodel (known per-arm sigma, score = 1 - Phi((kappa-mu)/sigma)).
double threshold_score(double mu, const ThresholdSpec& spec);
double m_threshold(double mu, const ThresholdSpec& spec, double rho);  // rho in (0,1)
double index_threshold(const NormalStats& stats, std::int64_t n,
                       const ThresholdSpec& spec);  // t >= 2

inline constexpr int kInitialPullsChk = 3;  // n0 for mean and variance submodels
inline constexpr int kDriftOffsetChk = 2;   // d~(t) for mean and variance submodels
inline constexpr int kInitialPullsThr = 2;  // n0 for the threshold submodel
inline constexpr int kDriftOffsetThr = 1;   // d~(t) for the threshold submodel

}  // namespace banditlab::normal
