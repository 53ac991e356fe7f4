#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "banditlab/errors.hpp"
#include "banditlab/specfun.hpp"

using banditlab::ValidationError;
namespace specfun = banditlab::specfun;

namespace {

// Reference root finder: plain bisection on L - ln L - 1 - delta, 200 rounds.
double bisect_l(double delta, bool lower) {
  double lo = lower ? 1e-300 : 1.0;
  double hi = lower ? 1.0 : 1e6 + 10.0 * delta;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    double h = mid - std::log(mid) - 1.0 - delta;
    bool root_below = lower ? (h > 0.0) : (h < 0.0);
    if (root_below) {
      lo = mid;
    } else {
      hi = mid;
    }
    // The lower root underflows fast; switch to a geometric mean bracket.
    if (lower && lo == 0.0) lo = 1e-300;
  }
  return 0.5 * (lo + hi);
}

// Reference normal CDF: Simpson quadrature of the density from 0 to |z|.
double quad_norm_cdf(double z) {
  const int n = 2000;
  double a = std::abs(z);
  double h = a / n;
  double sum = 1.0 + std::exp(-0.5 * a * a);
  for (int i = 1; i < n; ++i) {
    double x = i * h;
    sum += (i % 2 ? 4.0 : 2.0) * std::exp(-0.5 * x * x);
  }
  double integral = 0.3989422804014326779 * sum * h / 3.0;
  return z >= 0.0 ? 0.5 + integral : 0.5 - integral;
}

}  // namespace

TEST_CASE("both roots satisfy the defining equation") {
  const double deltas[] = {1e-8, 1e-4, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0};
  for (double delta : deltas) {
    CAPTURE(delta);
    double lo = specfun::l_minus(delta);
    double hi = specfun::l_plus(delta);
    CHECK(lo > 0.0);
    CHECK(lo < 1.0);
    CHECK(hi > 1.0);
    CHECK(lo - std::log(lo) - 1.0 == doctest::Approx(delta).epsilon(1e-12));
    CHECK(hi - std::log(hi) - 1.0 == doctest::Approx(delta).epsilon(1e-12));
  }
}

TEST_CASE("roots agree with an independent bisection") {
  const double deltas[] = {1e-6, 0.02, 0.3, 1.5, 4.0, 12.0};
  for (double delta : deltas) {
    CAPTURE(delta);
    CHECK(specfun::l_minus(delta) ==
          doctest::Approx(bisect_l(delta, true)).epsilon(1e-11));
    CHECK(specfun::l_plus(delta) ==
          doctest::Approx(bisect_l(delta, false)).epsilon(1e-11));
  }
}

TEST_CASE("root values pinned at reference points") {
  // At L = e the equation gives delta = e - 2, so l_plus(e - 2) = e exactly.
  CHECK(specfun::l_plus(std::exp(1.0) - 2.0) ==
        doctest::Approx(std::exp(1.0)).epsilon(1e-14));
  CHECK(specfun::l_minus(std::exp(1.0) - 2.0) ==
        doctest::Approx(0.224528298082957596).epsilon(1e-13));
  CHECK(specfun::l_minus(0.1) == doctest::Approx(0.616816831791705165).epsilon(1e-13));
  CHECK(specfun::l_plus(0.1) == doctest::Approx(1.51622116142502214).epsilon(1e-13));
  CHECK(specfun::l_plus(4.0) == doctest::Approx(6.93684740722021872).epsilon(1e-13));
  CHECK(specfun::l_minus(10.0) ==
        doctest::Approx(1.67019797440434829e-5).epsilon(1e-12));
  // Deep tail: the lower root tracks e^(-1-delta) without underflow surprises.
  CHECK(specfun::l_minus(50.0) ==
        doctest::Approx(7.09547416228470414e-23).epsilon(1e-12));
}

TEST_CASE("roots coincide at 1 when the radius vanishes") {
  CHECK(specfun::l_minus(0.0) == 1.0);
  CHECK(specfun::l_plus(0.0) == 1.0);
}

TEST_CASE("roots are monotone in the radius") {
  double prev_lo = 1.0, prev_hi = 1.0;
  for (double delta : {0.01, 0.1, 0.5, 1.0, 3.0, 8.0}) {
    double lo = specfun::l_minus(delta);
    double hi = specfun::l_plus(delta);
    CHECK(lo < prev_lo);
    CHECK(hi > prev_hi);
    prev_lo = lo;
    prev_hi = hi;
  }
}

TEST_CASE("negative or non-finite radius is rejected") {
  CHECK_THROWS_AS(specfun::l_minus(-1e-9), ValidationError);
  CHECK_THROWS_AS(specfun::l_plus(-2.0), ValidationError);
  CHECK_THROWS_AS(specfun::l_minus(std::nan("")), ValidationError);
  CHECK_THROWS_AS(specfun::l_plus(std::numeric_limits<double>::infinity()),
                  ValidationError);
}

TEST_CASE("normal cdf matches quadrature and symmetry") {
  for (double z : {0.0, 0.3, 1.0, 1.96, 2.5, 4.0, -0.7, -2.33}) {
    CAPTURE(z);
    CHECK(specfun::norm_cdf(z) == doctest::Approx(quad_norm_cdf(z)).epsilon(1e-12));
    CHECK(specfun::norm_cdf(z) + specfun::norm_cdf(-z) ==
          doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(specfun::norm_cdf(1.0) == doctest::Approx(0.841344746068542949).epsilon(1e-14));
  CHECK(specfun::norm_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(specfun::norm_cdf(std::nan("")), ValidationError);
}

TEST_CASE("normal quantile inverts the cdf") {
  for (double z : {-3.5, -1.2, -0.1, 0.0, 0.4, 1.0, 2.8, 5.0}) {
    CAPTURE(z);
    CHECK(specfun::norm_quantile(specfun::norm_cdf(z)) ==
          doctest::Approx(z).epsilon(1e-10));
  }
  for (double p : {1e-12, 1e-6, 0.2, 0.5, 0.77, 1.0 - 1e-6}) {
    CAPTURE(p);
    CHECK(specfun::norm_cdf(specfun::norm_quantile(p)) ==
          doctest::Approx(p).epsilon(1e-12));
  }
  CHECK(specfun::norm_quantile(0.2) ==
        doctest::Approx(-0.841621233572914205).epsilon(1e-13));
  CHECK(specfun::norm_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK_THROWS_AS(specfun::norm_quantile(0.0), ValidationError);
  CHECK_THROWS_AS(specfun::norm_quantile(1.0), ValidationError);
  CHECK_THROWS_AS(specfun::norm_quantile(-0.1), ValidationError);
}
