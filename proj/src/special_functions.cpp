#include "coag/special_functions.hpp"

#include <cmath>

namespace coag::special {

namespace {

constexpr double half_log_two_pi = 0.91893853320467274178;

// Lanczos, g = 7, 9 terms: ~1e-14 relative on Re z >= 0.5.
constexpr double lanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

bool at_pole(const cplx& z) {
    if (z.real() > 0.1) return false;
    double r = std::round(z.real());
    return r <= 0.0 && std::abs(z.real() - r) < 1e-13 && std::abs(z.imag()) < 1e-13;
}

cplx lanczos_log_gamma(cplx z) {
    // valid for Re z >= 0.5
    cplx zm1 = z - 1.0;
    cplx x = lanczos[0];
    for (int i = 1; i < 9; ++i) x += lanczos[i] / (zm1 + static_cast<double>(i));
    cplx t = zm1 + 7.5;
    return half_log_two_pi + (zm1 + 0.5) * std::log(t) - t + std::log(x);
}

} // namespace

cplx log_gamma(cplx z) {
    if (at_pole(z)) throw PoleError("log_gamma: nonpositive integer argument");
    // shift into Re >= 0.5 keeping the branch consistent with the product form
    cplx acc = 0.0;
    while (z.real() < 0.5) {
        acc -= std::log(z);
        z += 1.0;
    }
    return acc + lanczos_log_gamma(z);
}

double log_gamma(double x) {
    if (x <= 0.0) throw DomainError("log_gamma(real): requires x > 0");
    return std::lgamma(x);
}

namespace {

// B_{2n}/(2n), n = 1..7
constexpr double bern_over_2n[7] = {
    1.0 / 12.0,     -1.0 / 120.0,   1.0 / 252.0,        -1.0 / 240.0,
    1.0 / 132.0,    -691.0 / 32760.0, 1.0 / 12.0,
};

template <typename T>
T digamma_core(T z) {
    T acc = T(0.0);
    while (std::real(z) < 15.0) {
        acc -= T(1.0) / z;
        z += 1.0;
    }
    T inv = T(1.0) / z;
    T inv2 = inv * inv;
    T series = T(0.0);
    T p = inv2;
    for (double c : bern_over_2n) {
        series += c * p;
        p *= inv2;
    }
    return acc + std::log(z) - 0.5 * inv - series;
}

} // namespace

cplx digamma(cplx z) {
    if (at_pole(z)) throw PoleError("digamma: nonpositive integer argument");
    return digamma_core(z);
}

double digamma(double x) {
    if (x <= 0.0) throw DomainError("digamma(real): requires x > 0");
    return digamma_core(x);
}

cplx gamma_ratio(cplx a, cplx b) { return std::exp(log_gamma(a) - log_gamma(b)); }

double log_beta(double a, double b) {
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

} // namespace coag::special
