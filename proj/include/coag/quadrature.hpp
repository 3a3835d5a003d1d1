#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <complex>
#include <cstddef>

#include "coag/errors.hpp"

namespace coag::quad {

struct Params {
    double abs_tol = 1e-10;  // accept when the error estimate falls below this
    double rel_tol = 1e-9;   // ... or below rel_tol * |value|
    unsigned max_depth = 18; // adaptive bisection depth per panel
    int panels = 1;          // pre-split count, forces resolution of oscillations
};

struct Result {
    double value = 0.0;
    double error = 0.0; // quadrature error estimate plus any truncation bound
};

// Adaptive Gauss-Kronrod over [a, b], pre-split into params.panels equal
// panels. F may return double or std::complex<double>.
template <typename F>
auto integrate(F&& f, double a, double b, const Params& params = {}) {
    using R = decltype(f(a));
    boost::math::quadrature::gauss_kronrod<double, 15> unused{};
    (void)unused;
    R total{};
    double err_total = 0.0;
    const int n = params.panels < 1 ? 1 : params.panels;
    const double h = (b - a) / n;
    for (int i = 0; i < n; ++i) {
        const double lo = a + i * h;
        const double hi = (i + 1 == n) ? b : a + (i + 1) * h;
        double err = 0.0;
        total += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
            f, lo, hi, params.max_depth, params.rel_tol, &err);
        err_total += err;
    }
    double scale = std::abs(total);
    if (err_total > params.abs_tol && err_total > params.rel_tol * scale)
        throw QuadratureNotConverged("quadrature error estimate " + std::to_string(err_total) +
                                     " exceeds tolerance");
    return total;
}

// Same, but also reports the achieved error estimate instead of throwing on
// a tolerance miss. Used where the caller folds the estimate into its own
// reported bound.
template <typename F>
Result integrate_reporting(F&& f, double a, double b, const Params& params = {}) {
    Result r;
    const int n = params.panels < 1 ? 1 : params.panels;
    const double h = (b - a) / n;
    for (int i = 0; i < n; ++i) {
        const double lo = a + i * h;
        const double hi = (i + 1 == n) ? b : a + (i + 1) * h;
        double err = 0.0;
        r.value += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
            f, lo, hi, params.max_depth, params.rel_tol, &err);
        r.error += err;
    }
    return r;
}

} // namespace coag::quad
