#pragma once

namespace banditlab::specfun {

// The equation L - ln L - 1 = delta has two positive roots for delta > 0,
// one in (0,1) and one in (1,inf); both coincide at 1 for delta = 0.  They
// set the optimistic shrink/stretch factors of the scale-type indices.
double l_minus(double delta);  // lower root, in (0,1]
double l_plus(double delta);   // upper root, in [1,inf)

double norm_cdf(double z);       // standard normal CDF
double norm_quantile(double p);  // inverse of norm_cdf on (0,1)

}  // namespace banditlab::specfun
