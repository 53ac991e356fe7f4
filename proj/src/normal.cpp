#include "banditlab/normal.hpp"

#include <cmath>

#include "banditlab/errors.hpp"
#include "banditlab/specfun.hpp"

namespace banditlab::normal {

void validate(const NormalParams& p) {
  if (!(std::isfinite(p.mu) && std::isfinite(p.sigma) && p.sigma > 0.0)) {
    throw ValidationError("normal: need finite mu and sigma > 0");
  }
}

void update(NormalStats& stats, double x) {
  if (!std::isfinite(x)) throw ValidationError("normal update: sample must be finite");
  stats.count += 1;
  double delta = x - stats.mean;
  stats.mean += delta / static_cast<double>(stats.count);
  stats.m2 += delta * (x - stats.mean);
}

void merge(NormalStats& into, const NormalStats& other) {
  if (other.count == 0) return;
  if (into.count == 0) {
    into = other;
    return;
  }
  double n1 = static_cast<double>(into.count);
  double n2 = static_cast<double>(other.count);
  double delta = other.mean - into.mean;
  double total = n1 + n2;
  into.mean += delta * (n2 / total);
  into.m2 += other.m2 + delta * delta * (n1 * n2 / total);
  into.count += other.count;
}

double variance(const NormalStats& stats) {
  if (stats.count < 2) throw ValidationError("normal variance: need at least 2 samples");
  double v = stats.m2 / static_cast<double>(stats.count - 1);
  return v > 0.0 ? v : 0.0;  // cancellation guard
}

double quantile(const NormalParams& p, double u) {
  validate(p);
  return p.mu + p.sigma * specfun::norm_quantile(u);
}

double kl(const NormalParams& f, const NormalParams& g) {
  validate(f);
  validate(g);
  double dm = f.mu - g.mu;
  double r = (f.sigma * f.sigma) / (g.sigma * g.sigma);
  return dm * dm / (2.0 * g.sigma * g.sigma) + 0.5 * (r - std::log(r) - 1.0);
}

double m_chk(const NormalParams& f, double rho) {
  validate(f);
  if (!std::isfinite(rho)) throw ValidationError("normal m_chk: rho must be finite");
  if (rho <= f.mu) return 0.0;
  double z = (rho - f.mu) / f.sigma;
  return 0.5 * std::log1p(z * z);
}

double index_chk(const NormalStats& stats, std::int64_t n) {
  if (stats.count < 3) throw ValidationError("normal index_chk: need t >= 3");
  if (n < 1) throw ValidationError("normal index_chk: need n >= 1");
  double sd = std::sqrt(variance(stats));
  double grow = std::pow(static_cast<double>(n),
                         2.0 / static_cast<double>(stats.count - kDriftOffsetChk));
  return stats.mean + sd * std::sqrt(grow - 1.0);
}

double m_var(const NormalParams& f, double rho) {
  validate(f);
  if (!(rho > 0.0)) throw ValidationError("normal m_var: rho must be positive");
  double v = f.sigma * f.sigma;
  if (rho <= 1.0 / v) return 0.0;
  double rv = rho * v;
  return 0.5 * (rv - std::log(rv) - 1.0);
}

double index_var(const NormalStats& stats, std::int64_t n) {
  if (stats.count < 3) throw ValidationError("normal index_var: need t >= 3");
  if (n < 1) throw ValidationError("normal index_var: need n >= 1");
  double v = variance(stats);
  if (!(v > 0.0)) throw DegenerateDataError("normal index_var: zero sample variance");
  double radius = 2.0 * std::log(static_cast<double>(n)) /
                  static_cast<double>(stats.count - kDriftOffsetChk);
  return specfun::l_plus(radius) / v;
}

double threshold_score(double mu, const ThresholdSpec& spec) {
  if (!(std::isfinite(mu) && spec.known_sigma > 0.0 && std::isfinite(spec.kappa))) {
    throw ValidationError("normal threshold: need finite mu, kappa and sigma > 0");
  }
  return 1.0 - specfun::norm_cdf((spec.kappa - mu) / spec.known_sigma);
}

double m_threshold(double mu, const ThresholdSpec& spec, double rho) {
  if (!(rho > 0.0 && rho < 1.0)) {
    throw ValidationError("normal m_threshold: rho must lie strictly in (0,1)");
  }
  if (rho <= threshold_score(mu, spec)) return 0.0;
  double gap = (spec.kappa - mu) / spec.known_sigma - specfun::norm_quantile(1.0 - rho);
  return 0.5 * gap * gap;
}

double index_threshold(const NormalStats& stats, std::int64_t n, const ThresholdSpec& spec) {
  if (stats.count < 2) throw ValidationError("normal index_threshold: need t >= 2");
  if (n < 1) throw ValidationError("normal index_threshold: need n >= 1");
  if (!(spec.known_sigma > 0.0)) throw ValidationError("normal threshold: sigma > 0");
  double radius = 2.0 * std::log(static_cast<double>(n)) /
                  static_cast<double>(stats.count - kDriftOffsetThr);
  return 1.0 - specfun::norm_cdf((spec.kappa - stats.mean) / spec.known_sigma -
                                 std::sqrt(radius));
}

}  // namespace banditlab::normal
