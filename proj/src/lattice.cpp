#include "coag/lattice.hpp"

#include <algorithm>
#include <cmath>

#include <boost/numeric/odeint.hpp>

#include "coag/reference.hpp"

namespace coag::lattice {

namespace {

double initial_w0(double left_constant, const std::vector<double>& u) {
    double w = std::max(u.empty() ? 0.0 : u[0] - left_constant, 0.0);
    for (std::size_t i = 0; i + 1 < u.size(); ++i) w = std::max(w, u[i + 1] - u[i]);
    return w;
}

} // namespace

LatticeState make_box(double mass, int width, int j_start, std::size_t window) {
    if (!(mass > 0.0)) throw DomainError("make_box: requires mass > 0");
    if (width < 1) throw DomainError("make_box: requires width >= 1");
    if (j_start < 0) throw DomainError("make_box: requires j_start >= 0");
    LatticeState s;
    s.j_min = 0;
    s.left_constant = 0.0;
    s.u.assign(std::max(window, static_cast<std::size_t>(j_start + width + 32)), 0.0);
    for (int i = 0; i < width; ++i) s.u[static_cast<std::size_t>(j_start + i)] = mass / width;
    s.w0 = initial_w0(0.0, s.u);
    s.mass0 = mass;
    return s;
}

LatticeState make_riemann(double c_left, std::size_t window) {
    if (!(c_left > 0.0)) throw DomainError("make_riemann: requires c_left > 0");
    LatticeState s;
    s.j_min = 0;
    s.left_constant = c_left;
    s.u.assign(std::max<std::size_t>(window, 16), 0.0);
    s.w0 = 0.0; // data is nonincreasing
    s.mass0 = 0.0;
    return s;
}

LatticeState from_samples(int j_min, double left_constant, std::vector<double> u) {
    if (u.empty()) throw DomainError("from_samples: empty window");
    if (left_constant < 0.0) throw DomainError("from_samples: negative left constant");
    for (double v : u)
        if (v < 0.0) throw NegativeValue("from_samples: negative sample");
    LatticeState s;
    s.j_min = j_min;
    s.left_constant = left_constant;
    s.u = std::move(u);
    s.w0 = initial_w0(left_constant, s.u);
    s.mass0 = mass(s);
    return s;
}

void integrate_to(LatticeState& s, double t_end, const IntegrateOptions& opts) {
    using state_type = std::vector<double>;
    namespace ode = boost::numeric::odeint;
    if (t_end < s.t) throw DomainError("integrate_to: t_end precedes current time");

    const double c = s.left_constant;
    auto rhs = [c](const state_type& u, state_type& du, double) {
        double prev = c;
        const std::size_t n = u.size();
        for (std::size_t i = 0; i < n; ++i) {
            du[i] = prev * prev - u[i] * u[i];
            prev = u[i];
        }
    };

    auto stepper = ode::make_controlled(opts.tol, opts.tol,
                                        ode::runge_kutta_dopri5<state_type>());

    while (s.t < t_end - 1e-12) {
        double chunk_end = std::min(s.t + 1.0, t_end);
        ode::integrate_adaptive(stepper, rhs, s.u, s.t, chunk_end,
                                std::min(0.01, chunk_end - s.t));
        s.t = chunk_end;

        double lo = 0.0;
        for (double v : s.u) lo = std::min(lo, v);
        if (lo < -10.0 * std::max(opts.tol, 1e-12))
            throw NegativeValue("integrate_to: state left the nonnegative cone");

        const std::size_t n = s.u.size();
        if (s.u.back() > 1e-9)
            throw WindowTooSmall("integrate_to: support reached the window edge");
        if (opts.auto_grow && n >= 6 && s.u[n - 6] > opts.grow_threshold) {
            if (2 * n > opts.max_sites)
                throw WindowTooSmall("integrate_to: window growth exceeds max_sites");
            s.u.resize(2 * n, 0.0);
        }
    }
    s.t = t_end;
}

double mass(const LatticeState& s) {
    double acc = 0.0;
    for (double v : s.u) acc += v;
    return acc;
}

double entropy_gap(const LatticeState& s, double w0) {
    double w = initial_w0(s.left_constant, s.u);
    double bound = w0 > 0.0 ? 1.0 / (1.0 / w0 + s.t) : 0.0;
    return w - bound;
}

double entropy_gap(const LatticeState& s) { return entropy_gap(s, s.w0); }

double decay_ratio(const LatticeState& s) {
    double hi = 0.0;
    for (double v : s.u) hi = std::max(hi, v);
    return std::sqrt(s.t) * hi;
}

double nwave_error(const LatticeState& s, double mass_m) {
    if (s.left_constant != 0.0)
        throw DomainError("nwave_error: defined for integrable data (left constant 0)");
    if (!(s.t > 0.0)) throw DomainError("nwave_error: requires t > 0");
    const double rt = std::sqrt(s.t);
    auto nw = [&](int j) { return ref::nwave(static_cast<double>(j) / rt, mass_m) / rt; };

    double acc = 0.0;
    for (std::size_t i = 0; i < s.u.size(); ++i)
        acc += std::abs(s.u[i] - nw(s.j_min + static_cast<int>(i)));
    // N-wave mass outside the window
    int support_end = static_cast<int>(std::ceil(2.0 * std::sqrt(mass_m) * rt));
    for (int j = 1; j < s.j_min; ++j) acc += nw(j);
    for (int j = s.j_max() + 1; j <= support_end; ++j) acc += nw(j);
    return acc;
}

double front_position(const LatticeState& s, double level) {
    if (!(level > 0.0)) throw DomainError("front_position: requires level > 0");
    const auto& u = s.u;
    for (std::size_t i = u.size(); i-- > 0;) {
        if (u[i] >= level) {
            double next = i + 1 < u.size() ? u[i + 1] : 0.0;
            double frac = u[i] > next ? (u[i] - level) / (u[i] - next) : 0.0;
            return s.j_min + static_cast<double>(i) + frac;
        }
    }
    if (s.left_constant >= level) return s.j_min - 1.0;
    throw FrontNotFound("front_position: profile never reaches the level");
}

double riemann_front_speed(double c_left, double t1, double t2, const IntegrateOptions& opts) {
    if (!(t1 > 0.0) || !(t2 > t1)) throw DomainError("riemann_front_speed: requires 0 < t1 < t2");
    LatticeState s = make_riemann(c_left, static_cast<std::size_t>(2.0 * c_left * t2) + 64);
    integrate_to(s, t1, opts);
    double x1 = front_position(s, 0.5 * c_left);
    integrate_to(s, t2, opts);
    double x2 = front_position(s, 0.5 * c_left);
    return (x2 - x1) / (t2 - t1);
}

FiberMassProfile FiberMassProfile::constant(double mass_m) {
    if (!(mass_m > 0.0)) throw DomainError("FiberMassProfile: requires mass > 0");
    FiberMassProfile p;
    p.values_ = {mass_m};
    return p;
}

FiberMassProfile FiberMassProfile::sampled(std::vector<double> values) {
    if (values.empty()) throw DomainError("FiberMassProfile: empty sample list");
    for (double v : values)
        if (!(v > 0.0)) throw DomainError("FiberMassProfile: requires mass > 0");
    FiberMassProfile p;
    p.values_ = std::move(values);
    return p;
}

double FiberMassProfile::operator()(double theta) const {
    theta -= std::floor(theta);
    const std::size_t n = values_.size();
    if (n == 1) return values_[0];
    double pos = theta * static_cast<double>(n);
    std::size_t i0 = std::min(static_cast<std::size_t>(pos), n - 1);
    double frac = pos - static_cast<double>(i0);
    return values_[i0] + (values_[(i0 + 1) % n] - values_[i0]) * frac;
}

double fiber_compose(const FiberMassProfile& prof, double t, double x_big) {
    if (!(t > 0.0)) throw DomainError("fiber_compose: requires t > 0");
    double rt = std::sqrt(t);
    double theta = x_big - std::floor(x_big);
    return ref::nwave(x_big / rt, prof(theta)) / rt;
}

} // namespace coag::lattice
