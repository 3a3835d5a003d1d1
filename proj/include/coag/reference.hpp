#pragma once

#include <utility>
#include <vector>

#include "coag/errors.hpp"

namespace coag::ref {

// N-wave of mass M: x/2 on [0, 2 sqrt(M)], zero elsewhere.
double nwave(double x, double M);

// Closed-form additive-kernel wave with unit mass and speed 2:
//   G_1(X) = exp(X/2) exp(-exp(X)/2) / sqrt(2 pi).
double additive_g1(double x_big);

// Additive-kernel wave family on rho in (0, 1), a = rho/(1+rho):
//   G_rho(X) = (1/pi) sum_{j>=1} ((-1)^{j-1}/j!) e^{j a X}
//              Gamma(1 + j - j a) sin(j pi a).
// Usable only while the term envelope (the series with |sin| replaced by 1)
// has turned over by the truncation index, its geometric tail bound is
// small, and cancellation against the envelope peak leaves enough digits;
// otherwise SeriesDiverged. More terms extend the window to the right until
// roundoff from the envelope peak takes over.
double additive_g_rho(double x_big, double rho, int n_terms = 60);

struct GRhoDetail {
    double value = 0.0;
    double last_term = 0.0; // envelope of the final retained term
    double peak_term = 0.0; // envelope peak (cancellation gauge)
    int terms_used = 0;
};
GRhoDetail additive_g_rho_detail(double x_big, double rho, int n_terms = 60);

// Flank constants: G_rho ~ left_coefficient * e^{a X} as X -> -inf and
// G_rho ~ right_coefficient * e^{-rho X} as X -> +inf.
double g_rho_left_coefficient(double rho);
double g_rho_right_coefficient(double rho);

// Largest X on a quarter-unit grid in [0, 12] where the series with n_terms
// terms still evaluates; the usable window shrinks as rho -> 1.
double series_window_max_x(double rho, int n_terms = 60);

// Wave speed b = k0 (1 + rho) / rho of the mass-k0 member of the family.
double rho_to_b(double rho, double k0 = 1.0);

// Change of variables between self-similar profiles phi(x) and wave
// profiles G(X): X = ln x, G = x^2 phi.
std::vector<std::pair<double, double>> selfsim_to_wave(
    const std::vector<std::pair<double, double>>& xy);
std::vector<std::pair<double, double>> wave_to_selfsim(
    const std::vector<std::pair<double, double>>& xg);

// Number of confirmed crossings of the baseline by u: transitions between
// excursions that reach at least `floor_gate` beyond the baseline on both
// sides. The first confirmed excursion opens the count; each subsequent
// confirmed sign flip increments it.
int oscillation_count(const std::vector<double>& u, double baseline, double floor_gate);

} // namespace coag::ref
