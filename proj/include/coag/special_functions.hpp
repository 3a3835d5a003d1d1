#pragma once

#include <complex>

#include "coag/errors.hpp"

namespace coag::special {

using cplx = std::complex<double>;

// Principal-branch log-gamma. Lanczos (g = 7, 9 terms) on Re z >= 0.5;
// for Re z < 0.5 the argument is shifted up through the recurrence
// lgamma(z) = lgamma(z+1) - log z, which preserves the principal branch on
// the cut plane. Relative accuracy ~1e-13 on Re z > 0. Throws PoleError at
// nonpositive integers.
cplx log_gamma(cplx z);

// Complex digamma: recurrence up to |z| large enough for the Bernoulli
// asymptotic series. Same pole contract as log_gamma.
cplx digamma(cplx z);

// Real restrictions (positive arguments).
double log_gamma(double x);
double digamma(double x);

// exp(log_gamma(a) - log_gamma(b)), stable for large |a|, |b|.
cplx gamma_ratio(cplx a, cplx b);

// log Beta(a, b) for positive reals.
double log_beta(double a, double b);

} // namespace coag::special
