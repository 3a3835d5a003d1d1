#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "coag/kernels.hpp"

namespace coag::spectral {

using cplx = std::complex<double>;

// Linearization symbol M(k) of the constant wave in AUnit normalization,
// alpha > 1, via the gamma-function closed form. Entire in k along the real
// axis; poles of the constituent gamma factors off the contour raise
// PoleError. M(0) = 0 exactly.
cplx m_alpha_closed(double alpha, cplx k);

// dM/dk of the closed form (for Newton steps on the dispersion relation).
cplx m_alpha_closed_derivative(double alpha, cplx k);

struct MQuadResult {
    cplx value;
    double truncation_bound = 0.0; // analytic bound on the discarded tails
};

// Same symbol by direct oscillatory quadrature of the collision integral,
// real k, any class I AlphaFamily kernel (alpha > 0, either normalization).
// Independent of the gamma-function route; used to cross-check it.
MQuadResult m_quadrature(const KernelSpec& kern, double k, const quad::Params& params = {});

struct ScanResult {
    bool stable = false;
    double max_re = 0.0;   // max over the scanned band of Re M(k)
    double argmax_k = 0.0; // where it is attained
};

// Scan Re M over |k| <= k_max on a grid of spacing dk, refining each local
// maximum. The constant wave is spectrally stable on the band iff
// max Re M <= 0 (up to roundoff; M(0) = 0 always).
ScanResult stability_scan(double alpha, double k_max = 40.0, double dk = 0.01);

struct Root {
    cplx k;
    double residual = 0.0; // |M(k) + ik| at the accepted root
    bool dominant = false; // largest Im k among the accepted roots
};

struct RootSearchOptions {
    double re_min = -40.0, re_max = 40.0;
    double im_min = -30.0, im_max = -1e-3; // k = 0 solves the relation trivially; stay below it
    double seed_step = 0.5;
    double accept_residual = 1e-11;
    double dedup_tol = 1e-6;
    int max_newton = 80;
};

// Roots of the dispersion relation M(k) + ik = 0 in the lower half plane,
// alpha > 1. Im k of the dominant root is the spatial decay rate of the
// perturbation tail; Re k != 0 means the tail oscillates.
std::vector<Root> dispersion_roots(double alpha, const RootSearchOptions& opts = {});

// Single-atom near-diagonal symbol W(k, s); M(k) = -integral eta(s) W(k, s) ds.
cplx near_diagonal_w(double k, double s);

// M(k) for a symmetric eta (uniform band or atom list).
cplx near_diagonal_m(const EtaDensity& eta, double k, const quad::Params& params = {});

// The evolution scheme works in base-2 logarithmic coordinates; natural
// wavenumbers and growth rates rescale by ln 2.
double to_sim_wavenumber(double k_natural);
double to_sim_growth_rate(double re_m);

} // namespace coag::spectral
