#include "banditlab/specfun.hpp"

#include <cmath>

#include "banditlab/errors.hpp"

namespace banditlab::specfun {

namespace {

// Solves h(L) = L - ln L - 1 - delta = 0 on a bracket where h changes sign.
// Newton steps with bisection fallback; the bracket is maintained throughout,
// so convergence is guaranteed for any delta >= 0.
double solve_l(double delta, bool lower) {
  if (!(std::isfinite(delta)) || delta < 0.0) {
    throw ValidationError("l_minus/l_plus: delta must be finite and nonnegative");
  }
  if (delta == 0.0) return 1.0;

  // h is decreasing on (0,1) and increasing on (1,inf).
  // Lower branch: h(e^{-1-delta}) = e^{-1-delta} > 0, h(1) = -delta < 0.
  // Upper branch: h(1) < 0 and h(2(delta+2)) = delta + 3 - ln(2delta+4) > 0.
  double lo = lower ? std::exp(-1.0 - delta) : 1.0;
  double hi = lower ? 1.0 : 2.0 * (delta + 2.0);

  double x;
  if (lower) {
    if (delta > 0.5) {
      // Fixed point L = e^{L-1-delta}, contraction for small L.
      x = std::exp(-1.0 - delta);
      for (int i = 0; i < 4; ++i) x = std::exp(x - 1.0 - delta);
    } else {
      x = 1.0 - std::sqrt(2.0 * delta) + (2.0 / 3.0) * delta;  // series about L=1
    }
  } else {
    if (delta > 0.5) {
      x = 1.0 + delta + std::log1p(delta);
      for (int i = 0; i < 4; ++i) x = 1.0 + delta + std::log(x);
    } else {
      x = 1.0 + std::sqrt(2.0 * delta) + (2.0 / 3.0) * delta;
    }
  }
  if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);

  const double tol = 1e-15 * (1.0 + delta);
  for (int iter = 0; iter < 200; ++iter) {
    double h = x - std::log(x) - 1.0 - delta;
    if (std::abs(h) <= tol) break;
    // Shrink the bracket around the sign change.
    if (lower ? (h > 0.0) : (h < 0.0)) {
      lo = x;
    } else {
      hi = x;
    }
    double hp = 1.0 - 1.0 / x;
    double next = (hp != 0.0) ? x - h / hp : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == x) break;
    x = next;
  }
  return lower ? std::min(x, 1.0) : std::max(x, 1.0);
}

}  // namespace

double l_minus(double delta) { return solve_l(delta, true); }

double l_plus(double delta) { return solve_l(delta, false); }

double norm_cdf(double z) {
  if (std::isnan(z)) throw ValidationError("norm_cdf: z must not be NaN");
  return 0.5 * std::erfc(-z * 0.7071067811865475244);
}

double norm_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw ValidationError("norm_quantile: p must lie strictly inside (0,1)");
  }

  // Acklam's rational approximation (relative error ~1.15e-9), then one
  // Halley step against norm_cdf to push the residual to machine precision.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;

  double x;
  if (p < plow) {
    double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    double q = p - 0.5;
    double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  double e = norm_cdf(x) - p;
  double pdf = 0.3989422804014326779 * std::exp(-0.5 * x * x);
  if (pdf > 0.0) {
    double u = e / pdf;
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

}  // namespace banditlab::specfun
