#pragma once

#include <cstddef>
#include <vector>

#include "coag/errors.hpp"

namespace coag::lattice {

// State of the diagonal-kernel lattice system
//   du_j/dt = u_{j-1}^2 - u_j^2,
// stored on a window [j_min, j_min + u.size() - 1] with u = left_constant
// frozen for j < j_min and u = 0 beyond the window.
struct LatticeState {
    int j_min = 0;
    double left_constant = 0.0;
    std::vector<double> u;
    double t = 0.0;
    double w0 = 0.0;    // sup_j (u_{j+1} - u_j)_+ at t = 0
    double mass0 = 0.0; // window sum at t = 0

    int j_max() const { return j_min + static_cast<int>(u.size()) - 1; }
};

// Box of the given mass spread over `width` sites starting at j_start.
LatticeState make_box(double mass, int width = 5, int j_start = 0, std::size_t window = 64);

// Riemann data: u = c_left for j < 0, zero for j >= 0.
LatticeState make_riemann(double c_left, std::size_t window = 64);

LatticeState from_samples(int j_min, double left_constant, std::vector<double> u);

struct IntegrateOptions {
    double tol = 1e-10;            // absolute and relative stepper tolerance
    bool auto_grow = true;         // extend the window when support approaches j_max
    std::size_t max_sites = 1u << 22;
    double grow_threshold = 1e-14; // support level that triggers growth
};

// Advance to t_end with an adaptive embedded Runge-Kutta pair. Throws
// NegativeValue if the state leaves [-10 tol, inf), WindowTooSmall if the
// support hits the window edge and growth is off or capped.
void integrate_to(LatticeState& s, double t_end, const IntegrateOptions& opts = {});

// Window sum. Exactly conserved by the flow when left_constant = 0 and the
// support stays inside the window (the rhs telescopes).
double mass(const LatticeState& s);

// max_j (u_{j+1} - u_j)_+ minus the one-sided bound 1/(1/w0 + t);
// nonpositive for every solution with w0 recorded at t = 0. The one-argument
// form uses the w0 stored in the state.
double entropy_gap(const LatticeState& s, double w0);
double entropy_gap(const LatticeState& s);

// sqrt(t) * max_j u_j: bounded for integrable data, -> sqrt(M)/... the
// N-wave value sqrt(M) as the profile converges.
double decay_ratio(const LatticeState& s);

// l1 distance between u and the rescaled N-wave sample (1/sqrt(t)) N(j/sqrt(t); M),
// including the N-wave mass outside the window. Requires left_constant = 0.
double nwave_error(const LatticeState& s, double mass_m);

// Rightmost downward crossing of `level`, linearly interpolated, in lattice
// units. FrontNotFound if u never reaches level.
double front_position(const LatticeState& s, double level);

// Front speed of the Riemann solution with left state c_left, measured
// between t1 and t2 at level c_left/2. Converges to c_left.
double riemann_front_speed(double c_left, double t1, double t2,
                           const IntegrateOptions& opts = {});

// Periodic mass profile theta in [0,1) -> M(theta) > 0.
class FiberMassProfile {
public:
    static FiberMassProfile constant(double mass_m);
    static FiberMassProfile sampled(std::vector<double> values); // linear, wraps

    double operator()(double theta) const;

private:
    std::vector<double> values_{1.0};
};

// Long-time composite profile in continuum variables:
//   u(t, X) = (1/sqrt(t)) N(X / sqrt(t); M(frac X)).
// Piecewise smooth; jumps sit where the active fiber's support edge
// 2 sqrt(t M(frac X)) crosses X, not at integer X.
double fiber_compose(const FiberMassProfile& prof, double t, double x_big);

} // namespace coag::lattice
