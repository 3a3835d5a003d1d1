#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "coag/kernels.hpp"

namespace coag::wavesim {

enum class InitKind { Riemann, Bump, File };

struct SimConfig {
    double alpha = 8.0;
    double eps = 0.05;  // grid spacing in X
    double L = 40.0;    // domain [0, L], N = round(L/eps) + 1 nodes
    double R = 25.0;    // kernel interaction radius in Y
    double tau = 0.0;   // step; 0 selects 0.5 * tau_max
    double t_end = 4.0;
    double snap_dt = 1.0;

    InitKind init = InitKind::Riemann;
    double c_minus = 1.0;     // left boundary constant
    double riemann_x0 = 4.0;  // ramp start
    double ramp_width = 0.0;  // 0 selects 5 * eps
    double bump_mass = 1.0;
    double bump_center = 8.0;
    double bump_width = 2.0;
    std::vector<double> init_values; // InitKind::File, size N+1

    double blowup_factor = 1e6;   // abort when max u exceeds this times max u(0)
    double negativity_tol = 1e-6; // abort when min u drops below -this
};

struct FieldState {
    double eps = 0.0;
    double c_minus = 0.0, c_plus = 0.0; // boundary constants beyond the window
    double t = 0.0;
    std::vector<double> u; // u[i] at X = i * eps
};

struct Snapshot {
    double t = 0.0;
    std::vector<double> u;
};

struct SimResult {
    SimConfig cfg;
    double tau = 0.0;
    double tau_max = 0.0;
    double a_simplex = 0.0; // Burgers constant of the kernel actually run
    std::vector<Snapshot> snapshots;
    std::vector<std::pair<double, double>> mass_series; // (t, eps * sum u)
};

// Explicit-step stability cap 0.2 eps / (A * max u): the loss term contracts
// by at most ~A max u / eps per unit time.
double stability_cap(double eps, double a_simplex, double max_u);

FieldState make_initial(const SimConfig& cfg);

// One collision-operator evaluation on the current field (exposed for tests).
std::vector<double> rhs(const FieldState& s, const WeightTables& tables, int threads = 1);

// Run the explicit scheme. Throws DomainError on an inconsistent config
// (tau > tau_max, bad init), BlowUp / NegativityBreach if the run leaves the
// configured envelope. Deterministic for fixed config regardless of threads.
SimResult simulate(const SimConfig& cfg, int threads = 1);

// Rightmost downward crossing of `level` in X units.
double front_position(const FieldState& s, double level);

struct WaveProfile {
    std::function<double(double)> g;
    double limit_minus = 0.0; // value as X -> -inf
    double limit_plus = 0.0;  // value as X -> +inf
};

struct TwOptions {
    double y_min_arg = -45.0; // truncate where the profile argument falls below
    double z_max_arg = 45.0;  // ... or rises above these (decaying flanks only)
    quad::Params quad{1e-9, 1e-9, 18, 1};
};

// Max over test_points of |b G'(X)| replaced by its integral form:
// residual of the steady wave equation
//   b G(X) = int int K(e^{Y-Z}, 1) G(X+Y) G(X+Z) dZ dY
// (flux form, constants allowed as flank limits). Pointwise class I kernels
// truncate in Y, Z by kernel decay; class II requires decaying flanks.
double traveling_wave_residual(const WaveProfile& prof, const KernelSpec& kern,
                               double b, const std::vector<double>& test_points,
                               const TwOptions& opts = {});

} // namespace coag::wavesim
