#include "banditlab/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "banditlab/errors.hpp"
#include "banditlab/specfun.hpp"

namespace banditlab::oracles {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kScoreMargin = 1e-12;  // strict s(g) > rho as s(g) >= rho + margin

double lerp(double lo, double hi, int k, int last) {
  if (k == 0) return lo;
  if (k == last) return hi;
  return lo + (hi - lo) * (static_cast<double>(k) / last);
}

bool improves(double value, const std::vector<double>& point, const GridSearchResult& best) {
  if (!best.found || value < best.value) return true;
  if (value > best.value) return false;
  return std::lexicographical_compare(point.begin(), point.end(), best.point.begin(),
                                      best.point.end());
}

// A family grid plus which box edges may stretch while chasing the optimum.
struct MinProblem {
  FamilyGrid grid;
  std::vector<char> expand_lo;
  std::vector<char> expand_hi;
};

double solve_min(MinProblem problem, int resolution) {
  FamilyGrid& grid = problem.grid;
  GridSearchResult best;
  for (int round = 0; round < 48; ++round) {
    best = grid_search_min(grid, resolution);
    bool widened = false;
    if (!best.found) {
      // Nothing feasible yet: stretch every soft edge and retry.
      for (std::size_t d = 0; d < grid.lo.size(); ++d) {
        double width = grid.hi[d] - grid.lo[d];
        if (problem.expand_lo[d]) { grid.lo[d] -= width; widened = true; }
        if (problem.expand_hi[d]) { grid.hi[d] += width; widened = true; }
      }
      if (!widened) break;
      continue;
    }
    // Optimum hugging a soft edge: the box may be clipping it; stretch.
    for (std::size_t d = 0; d < grid.lo.size(); ++d) {
      double width = grid.hi[d] - grid.lo[d];
      if (problem.expand_lo[d] && best.point[d] < grid.lo[d] + 0.03 * width) {
        grid.lo[d] -= width;
        widened = true;
      }
      if (problem.expand_hi[d] && best.point[d] > grid.hi[d] - 0.03 * width) {
        grid.hi[d] += width;
        widened = true;
      }
    }
    if (!widened) return best.value;
  }
  if (best.found) return best.value;
  throw UnattainableScoreError("oracle: score threshold unattainable in the family");
}

MinProblem m_problem(const arms::ParetoArm& arm, double rho) {
  const double alpha = arm.params.alpha;
  const double beta = arm.params.beta;
  const double ell = arm.params.floor_l;
  const pareto::SeparableScore score = arm.score;
  // Coordinates: (ln(alpha~ - ell), beta~); KL finite only for beta~ <= beta.
  MinProblem p;
  double y0 = std::log(alpha - ell);
  p.grid.lo = {y0 - 30.0, beta * 0.125};
  p.grid.hi = {y0 + 8.0, beta};
  p.grid.objective = [alpha, beta, ell](const std::vector<double>& x) {
    double alpha_g = ell + std::exp(x[0]);
    double r = alpha_g / alpha;
    return r - std::log(r) - 1.0 + alpha_g * std::log(beta / x[1]);
  };
  p.grid.feasible = [score, ell, rho](const std::vector<double>& x) {
    double alpha_g = ell + std::exp(x[0]);
    return score.a(alpha_g) * score.b(x[1]) >= rho + kScoreMargin;
  };
  p.expand_lo = {1, 0};
  p.expand_hi = {1, 0};
  return p;
}

MinProblem m_problem(const arms::CoverageArm& arm, double rho) {
  const double s_measure = arm.support.measure();
  // Coordinate: the superset measure, up to the closure point 1.
  MinProblem p;
  p.grid.lo = {0.5 * s_measure};
  p.grid.hi = {1.0};
  p.grid.objective = [s_measure](const std::vector<double>& x) {
    if (x[0] < s_measure) return kInf;
    return std::log(x[0] / s_measure);
  };
  p.grid.feasible = [rho](const std::vector<double>& x) {
    return x[0] >= rho + kScoreMargin;
  };
  p.expand_lo = {0};
  p.expand_hi = {0};
  return p;
}

MinProblem m_problem(const arms::IntervalArm& arm, double rho) {
  const double low = arm.params.low;
  const double high = arm.params.high;
  const double span = high - low;
  const interval::MonotoneScore2D score = arm.score;
  // Coordinates: (a~, b~) with a~ <= low and b~ >= high (support superset).
  MinProblem p;
  p.grid.lo = {low - 4.0 * span, high};
  p.grid.hi = {low, high + 4.0 * span};
  p.grid.objective = [low, high, span](const std::vector<double>& x) {
    if (!(x[0] <= low && x[1] >= high)) return kInf;
    return std::log((x[1] - x[0]) / span);
  };
  p.grid.feasible = [score, rho](const std::vector<double>& x) {
    return score.value(x[0], x[1]) >= rho + kScoreMargin;
  };
  p.expand_lo = {1, 0};
  p.expand_hi = {0, 1};
  return p;
}

MinProblem normal_kl_problem(double mu, double sigma) {
  // Coordinates: (mu~, ln sigma~); callers attach feasibility and box edges.
  MinProblem p;
  p.grid.objective = [mu, sigma](const std::vector<double>& x) {
    double dm = mu - x[0];
    double var_g = std::exp(2.0 * x[1]);
    double r = sigma * sigma / var_g;
    return dm * dm / (2.0 * var_g) + 0.5 * (r - std::log(r) - 1.0);
  };
  return p;
}

MinProblem m_problem(const arms::NormalChkArm& arm, double rho) {
  const double mu = arm.params.mu;
  const double sigma = arm.params.sigma;
  MinProblem p = normal_kl_problem(mu, sigma);
  double mu_lo = rho + kScoreMargin;  // hard feasibility edge: mu~ >= rho
  p.grid.lo = {mu_lo, std::log(sigma) - 6.0};
  p.grid.hi = {std::max(mu_lo + 8.0 * sigma, mu + 4.0 * sigma), std::log(sigma) + 6.0};
  p.grid.feasible = [rho](const std::vector<double>& x) {
    return x[0] >= rho + kScoreMargin;
  };
  p.expand_lo = {0, 1};
  p.expand_hi = {1, 1};
  return p;
}

MinProblem m_problem(const arms::NormalVarArm& arm, double rho) {
  const double mu = arm.params.mu;
  const double sigma = arm.params.sigma;
  MinProblem p = normal_kl_problem(mu, sigma);
  p.grid.lo = {mu - 4.0 * sigma, std::log(sigma) - 8.0};
  p.grid.hi = {mu + 4.0 * sigma, std::log(sigma) + 2.0};
  p.grid.feasible = [rho](const std::vector<double>& x) {
    return std::exp(-2.0 * x[1]) >= rho + kScoreMargin;
  };
  p.expand_lo = {1, 1};
  p.expand_hi = {1, 1};
  return p;
}

MinProblem m_problem(const arms::NormalThrArm& arm, double kappa, double rho) {
  const double mu = arm.mu;
  const double sigma = arm.sigma_known;
  // Coordinate: mu~ alone; sigma is known and shared between f and g.
  MinProblem p;
  p.grid.lo = {mu - sigma};
  p.grid.hi = {mu + 8.0 * sigma};
  p.grid.objective = [mu, sigma](const std::vector<double>& x) {
    double dm = x[0] - mu;
    return dm * dm / (2.0 * sigma * sigma);
  };
  p.grid.feasible = [kappa, sigma, rho](const std::vector<double>& x) {
    return 1.0 - specfun::norm_cdf((kappa - x[0]) / sigma) >= rho + kScoreMargin;
  };
  p.expand_lo = {0};
  p.expand_hi = {1};
  return p;
}

double require_kappa(const arms::SharedModelConfig& shared) {
  if (!shared.kappa.has_value()) {
    throw ValidationError("oracle: normal_thr requires a shared kappa");
  }
  return *shared.kappa;
}

}  // namespace

GridSearchResult grid_search_min(const FamilyGrid& grid, int resolution) {
  std::size_t dims = grid.lo.size();
  if (dims == 0 || dims > 2 || grid.hi.size() != dims) {
    throw ValidationError("grid_search_min: need a 1- or 2-dimensional box");
  }
  if (resolution < 8) throw ValidationError("grid_search_min: resolution must be >= 8");
  for (std::size_t d = 0; d < dims; ++d) {
    if (!(grid.lo[d] < grid.hi[d]) || !std::isfinite(grid.lo[d]) ||
        !std::isfinite(grid.hi[d])) {
      throw ValidationError("grid_search_min: invalid box");
    }
  }

  GridSearchResult best;
  std::vector<double> x(dims);
  auto consider = [&](const std::vector<double>& point) {
    if (!grid.feasible(point)) return;
    double value = grid.objective(point);
    if (std::isnan(value)) return;
    if (improves(value, point, best)) {
      best.found = true;
      best.value = value;
      best.point = point;
    }
  };

  const int last = resolution - 1;
  if (dims == 1) {
    for (int i = 0; i < resolution; ++i) {
      x[0] = lerp(grid.lo[0], grid.hi[0], i, last);
      consider(x);
    }
  } else {
    for (int i = 0; i < resolution; ++i) {
      x[0] = lerp(grid.lo[0], grid.hi[0], i, last);
      for (int j = 0; j < resolution; ++j) {
        x[1] = lerp(grid.lo[1], grid.hi[1], j, last);
        consider(x);
      }
    }
  }
  if (!best.found) return best;

  std::vector<double> halfwidth(dims);
  for (std::size_t d = 0; d < dims; ++d) halfwidth[d] = 0.5 * (grid.hi[d] - grid.lo[d]);
  const int kScan = 16;
  for (int sweep = 0; sweep < 60; ++sweep) {
    for (std::size_t d = 0; d < dims; ++d) {
      halfwidth[d] *= 0.5;
      double lo = std::max(grid.lo[d], best.point[d] - halfwidth[d]);
      double hi = std::min(grid.hi[d], best.point[d] + halfwidth[d]);
      x = best.point;
      for (int k = 0; k <= kScan; ++k) {
        x[d] = lerp(lo, hi, k, kScan);
        consider(x);
      }
    }
  }
  return best;
}

double m_oracle(const arms::ArmModel& f, double rho, const arms::SharedModelConfig& shared,
                int grid_resolution) {
  if (!std::isfinite(rho)) throw ValidationError("m_oracle: rho must be finite");
  MinProblem problem = [&] {
    if (const auto* arm = std::get_if<arms::ParetoArm>(&f)) return m_problem(*arm, rho);
    if (const auto* arm = std::get_if<arms::CoverageArm>(&f)) return m_problem(*arm, rho);
    if (const auto* arm = std::get_if<arms::IntervalArm>(&f)) return m_problem(*arm, rho);
    if (const auto* arm = std::get_if<arms::NormalChkArm>(&f)) return m_problem(*arm, rho);
    if (const auto* arm = std::get_if<arms::NormalVarArm>(&f)) return m_problem(*arm, rho);
    const auto& arm = std::get<arms::NormalThrArm>(f);
    return m_problem(arm, require_kappa(shared), rho);
  }();
  return solve_min(std::move(problem), grid_resolution);
}

double index_oracle(const arms::ArmModel& f_hat, double radius,
                    const arms::SharedModelConfig& shared, int grid_resolution) {
  if (!(std::isfinite(radius) && radius > 0.0)) {
    throw ValidationError("index_oracle: radius must be positive and finite");
  }
  auto m_at = [&](double rho) {
    try {
      return m_oracle(f_hat, rho, shared, grid_resolution);
    } catch (const UnattainableScoreError&) {
      return kInf;
    }
  };
  // Companion duality: C(radius) = sup{rho : M(rho) <= radius}, with M
  // nondecreasing in rho; bracket the crossing, then bisect.
  double lo = true_score(f_hat, shared);
  double hi = lo;
  double step = std::max(1.0, std::abs(lo));
  bool bounded = false;
  for (int k = 0; k < 70; ++k) {
    hi = lo + step;
    if (m_at(hi) > radius) {
      bounded = true;
      break;
    }
    lo = hi;
    step *= 2.0;
  }
  if (!bounded) return kInf;
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    if (m_at(mid) <= radius) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

double true_score(const arms::ArmModel& arm, const arms::SharedModelConfig& shared) {
  if (const auto* a = std::get_if<arms::ParetoArm>(&arm)) return a->score.value(a->params);
  if (const auto* a = std::get_if<arms::CoverageArm>(&arm)) return a->support.measure();
  if (const auto* a = std::get_if<arms::IntervalArm>(&arm)) {
    return a->score.value(a->params.low, a->params.high);
  }
  if (const auto* a = std::get_if<arms::NormalChkArm>(&arm)) return a->params.mu;
  if (const auto* a = std::get_if<arms::NormalVarArm>(&arm)) {
    return 1.0 / (a->params.sigma * a->params.sigma);
  }
  const auto& a = std::get<arms::NormalThrArm>(arm);
  return normal::threshold_score(a.mu, {require_kappa(shared), a.sigma_known});
}

double closed_form_m(const arms::ArmModel& f, double rho,
                     const arms::SharedModelConfig& shared) {
  if (const auto* a = std::get_if<arms::ParetoArm>(&f)) {
    return pareto::m(a->params, rho, a->score);
  }
  if (const auto* a = std::get_if<arms::CoverageArm>(&f)) {
    return coverage::m(a->support.measure(), rho);
  }
  if (const auto* a = std::get_if<arms::IntervalArm>(&f)) {
    return interval::m(a->params, rho, a->score);
  }
  if (const auto* a = std::get_if<arms::NormalChkArm>(&f)) {
    return normal::m_chk(a->params, rho);
  }
  if (const auto* a = std::get_if<arms::NormalVarArm>(&f)) {
    return normal::m_var(a->params, rho);
  }
  const auto& a = std::get<arms::NormalThrArm>(f);
  return normal::m_threshold(a.mu, {require_kappa(shared), a.sigma_known}, rho);
}

double closed_form_index(const arms::ArmModel& f_hat, double radius,
                         const arms::SharedModelConfig& shared) {
  if (!(std::isfinite(radius) && radius > 0.0)) {
    throw ValidationError("closed_form_index: radius must be positive and finite");
  }
  if (const auto* a = std::get_if<arms::ParetoArm>(&f_hat)) {
    double w = a->params.alpha * specfun::l_minus(radius);
    if (w <= a->params.floor_l) return kInf;
    return a->score.b(a->params.beta) * a->score.a(w);
  }
  if (const auto* a = std::get_if<arms::CoverageArm>(&f_hat)) {
    return std::min(a->support.measure() * std::exp(radius), 1.0);
  }
  if (const auto* a = std::get_if<arms::IntervalArm>(&f_hat)) {
    double low = a->params.low;
    double span = a->params.high - low;
    return a->score.value(low, low + span * std::exp(radius));
  }
  if (const auto* a = std::get_if<arms::NormalChkArm>(&f_hat)) {
    return a->params.mu + a->params.sigma * std::sqrt(std::exp(2.0 * radius) - 1.0);
  }
  if (const auto* a = std::get_if<arms::NormalVarArm>(&f_hat)) {
    return specfun::l_plus(2.0 * radius) / (a->params.sigma * a->params.sigma);
  }
  const auto& a = std::get<arms::NormalThrArm>(f_hat);
  double kappa = require_kappa(shared);
  return 1.0 - specfun::norm_cdf((kappa - a.mu) / a.sigma_known - std::sqrt(2.0 * radius));
}

double range_cdf(std::int64_t t, double lambda) {
  if (t < 2) throw ValidationError("range_cdf: need t >= 2");
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw ValidationError("range_cdf: lambda must lie strictly in (0,1)");
  }
  double td = static_cast<double>(t);
  return (td * (1.0 - lambda) + lambda) * std::pow(lambda, td - 1.0);
}

double chernoff_bound(BoundKind kind, std::int64_t t, double ratio, Tail tail) {
  if (t < 1) throw ValidationError("chernoff_bound: need t >= 1");
  if (!(std::isfinite(ratio) && ratio > 0.0)) {
    throw ValidationError("chernoff_bound: ratio must be positive and finite");
  }
  if (tail == Tail::lower && ratio > 1.0) {
    throw ValidationError("chernoff_bound: lower tail needs ratio <= 1");
  }
  if (tail == Tail::upper && ratio < 1.0) {
    throw ValidationError("chernoff_bound: upper tail needs ratio >= 1");
  }
  double exponent = (kind == BoundKind::gamma) ? static_cast<double>(t)
                                               : 0.5 * static_cast<double>(t);
  return std::pow(ratio * std::exp(1.0 - ratio), exponent);
}

double normal_tail_bound(double z) {
  if (!(z >= 0.0)) throw ValidationError("normal_tail_bound: need z >= 0");
  return 0.5 * std::exp(-0.5 * z * z);
}

double gamma_cdf(double x, double shape) {
  if (!(shape > 0.0) || !std::isfinite(x)) {
    throw ValidationError("gamma_cdf: need finite x and shape > 0");
  }
  if (x <= 0.0) return 0.0;
  double log_prefix = -x + shape * std::log(x) - std::lgamma(shape);
  if (x < shape + 1.0) {
    double ap = shape;
    double del = 1.0 / shape;
    double sum = del;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(log_prefix);
  }
  // Modified Lentz continued fraction for the upper tail Q.
  const double tiny = 1e-300;
  double b = x + 1.0 - shape;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - shape);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delt = d * c;
    h *= delt;
    if (std::abs(delt - 1.0) < 1e-16) break;
  }
  return 1.0 - std::exp(log_prefix) * h;
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw ValidationError("ks_statistic: empty sample");
  std::sort(samples.begin(), samples.end());
  double m = static_cast<double>(samples.size());
  double stat = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double f = cdf(samples[i]);
    stat = std::max(stat, f - static_cast<double>(i) / m);
    stat = std::max(stat, static_cast<double>(i + 1) / m - f);
  }
  return stat;
}

double ks_critical_01(std::size_t draws) {
  if (draws == 0) throw ValidationError("ks_critical_01: empty sample");
  return 1.63 / std::sqrt(static_cast<double>(draws));
}

double pearson_correlation(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw ValidationError("pearson_correlation: need two equal-length samples, size >= 2");
  }
  double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double dx = xs[i] - mx;
    double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  return sxy / std::sqrt(sxx * syy);
}

OracleCheckResult oracle_self_check(const std::string& family, int grid_resolution) {
  struct CheckCase {
    arms::ArmModel arm;
    std::vector<double> rhos;
    std::vector<double> radii;
  };
  arms::SharedModelConfig shared;
  std::vector<CheckCase> cases;

  auto add_pareto = [&cases](const pareto::SeparableScore& score,
                             std::vector<double> base_radii) {
    const double points[5][2] = {{1.5, 1.0}, {2.0, 1.0}, {3.0, 0.5}, {2.5, 2.0}, {4.0, 1.5}};
    for (const auto& pt : points) {
      pareto::ParetoParams params{pt[0], pt[1], score.floor_l()};
      double s = score.value(params);
      std::vector<double> radii = base_radii;
      if (score.floor_l() > 0.0) {
        // Straddle the radius where the index turns infinite.
        double q = score.floor_l() / pt[0];
        double flip = q - std::log(q) - 1.0;
        radii = {0.3 * flip, 0.8 * flip, 1.5 * flip};
      }
      cases.push_back(CheckCase{arms::ParetoArm{params, score},
                                {1.1 * s, 1.5 * s, 3.0 * s},
                                std::move(radii)});
    }
  };

  if (family == "pareto_mean") {
    add_pareto(pareto::SeparableScore::mean_score(), {0.2, 1.0, 3.0});
  } else if (family == "pareto_tail") {
    add_pareto(pareto::SeparableScore::tail_exponent_score(), {0.2, 1.0, 3.0});
  } else if (family == "pareto_median") {
    // The median sup grows like 2^(1/l_minus); cap the radius so its value
    // stays ~1e3 and an absolute comparison at 1e-8 is still meaningful.
    add_pareto(pareto::SeparableScore::median_score(), {0.2, 1.0, 1.5});
  } else if (family == "coverage") {
    for (double s : {0.2, 0.35, 0.5, 0.65, 0.8}) {
      cases.push_back(CheckCase{
          arms::CoverageArm{coverage::SupportSet({{0.0, s}})},
          {std::min(1.2 * s, 0.5 * (1.0 + s)), 0.5 * (1.0 + s), 0.95},
          {0.1, 0.5, 2.0}});  // radius 2.0 exercises the cap at full measure
    }
  } else if (family == "interval") {
    const double points[5][2] = {
        {0.0, 1.0}, {0.0, 0.8}, {-1.0, 1.0}, {2.0, 5.0}, {-0.3, 0.7}};
    for (const auto& pt : points) {
      interval::IntervalParams params{pt[0], pt[1]};
      double s = 0.5 * (pt[0] + pt[1]);
      double span = pt[1] - pt[0];
      cases.push_back(CheckCase{
          arms::IntervalArm{params, interval::MonotoneScore2D::mean_score()},
          {s + 0.2 * span, s + 0.6 * span, s + 1.5 * span},
          {0.2, 1.0, 3.0}});
    }
  } else if (family == "normal_chk") {
    const double points[5][2] = {
        {0.0, 1.0}, {0.5, 1.0}, {-1.0, 0.5}, {2.0, 3.0}, {1.0, 0.2}};
    for (const auto& pt : points) {
      cases.push_back(CheckCase{
          arms::NormalChkArm{{pt[0], pt[1]}},
          {pt[0] + 0.5 * pt[1], pt[0] + 1.5 * pt[1], pt[0] + 3.0 * pt[1]},
          {0.2, 1.0, 3.0}});
    }
  } else if (family == "normal_var") {
    const double points[5][2] = {
        {0.0, 0.7}, {0.0, 1.0}, {1.0, 1.4}, {-2.0, 2.0}, {0.5, 2.8}};
    for (const auto& pt : points) {
      double s = 1.0 / (pt[1] * pt[1]);
      cases.push_back(CheckCase{arms::NormalVarArm{{pt[0], pt[1]}},
                                {1.2 * s, 2.0 * s, 5.0 * s},
                                {0.2, 1.0, 3.0}});
    }
  } else if (family == "normal_thr") {
    shared.kappa = 1.0;
    const double points[5][2] = {
        {1.0, 1.0}, {0.0, 1.0}, {0.5, 2.0}, {-1.0, 1.5}, {2.0, 0.8}};
    for (const auto& pt : points) {
      double s = normal::threshold_score(pt[0], {*shared.kappa, pt[1]});
      cases.push_back(CheckCase{
          arms::NormalThrArm{pt[0], pt[1]},
          {s + 0.25 * (1.0 - s), s + 0.5 * (1.0 - s), s + 0.8 * (1.0 - s)},
          {0.2, 1.0, 3.0}});
    }
  } else {
    throw ValidationError("oracle check: unknown family '" + family + "'");
  }

  auto agreement_error = [](double closed, double searched) {
    if (std::isinf(closed) && std::isinf(searched) && closed == searched) return 0.0;
    return std::abs(closed - searched);
  };

  OracleCheckResult result;
  for (const CheckCase& c : cases) {
    for (double rho : c.rhos) {
      double closed = closed_form_m(c.arm, rho, shared);
      double searched = m_oracle(c.arm, rho, shared, grid_resolution);
      result.m_comparisons += 1;
      result.max_m_error = std::max(result.max_m_error, agreement_error(closed, searched));
    }
    for (double radius : c.radii) {
      double closed = closed_form_index(c.arm, radius, shared);
      double searched = index_oracle(c.arm, radius, shared, grid_resolution);
      result.index_comparisons += 1;
      result.max_index_error =
          std::max(result.max_index_error, agreement_error(closed, searched));
    }
  }
  return result;
}

}  // namespace banditlab::oracles
