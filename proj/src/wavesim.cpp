#include "coag/wavesim.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

namespace coag::wavesim {

namespace {

constexpr double pi = 3.14159265358979323846;

// Per-row sampling stencil: for row i the three field taps sit at
// X + off*eps + frac*eps with precomputed integer offset and fraction.
struct Stencil {
    std::size_t rows = 0; // trimmed row count (weights below cutoff dropped)
    std::vector<int> o1, o2, o3;
    std::vector<double> f1, f2, f3;
    std::vector<double> wg, wb, wc;
};

Stencil build_stencil(const WeightTables& t) {
    const double eps = t.eps;
    const std::size_t n = t.w_gain.size();

    double peak = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        peak = std::max({peak, std::abs(t.w_gain[i]), std::abs(t.w_b[i]), std::abs(t.w_c[i])});
    const double cutoff = 1e-17 * peak;

    // weights decay geometrically in Y; rows past the last significant one
    // contribute nothing at double precision
    std::size_t rows = n;
    while (rows > 1 && std::abs(t.w_gain[rows - 1]) < cutoff &&
           std::abs(t.w_b[rows - 1]) < cutoff && std::abs(t.w_c[rows - 1]) < cutoff)
        --rows;

    Stencil s;
    s.rows = rows;
    s.o1.resize(rows); s.o2.resize(rows); s.o3.resize(rows);
    s.f1.resize(rows); s.f2.resize(rows); s.f3.resize(rows);
    s.wg.assign(t.w_gain.begin(), t.w_gain.begin() + rows);
    s.wb.assign(t.w_b.begin(), t.w_b.begin() + rows);
    s.wc.assign(t.w_c.begin(), t.w_c.begin() + rows);
    // trapezoidal endpoint weights: plain point sums leave an O(eps)
    // gain/loss imbalance that makes even a constant field drift; the
    // half-weight restores the discrete balance to O(eps^2)
    s.wg[0] *= 0.5; s.wb[0] *= 0.5; s.wc[0] *= 0.5;
    if (rows == n) {
        s.wg[rows - 1] *= 0.5; s.wb[rows - 1] *= 0.5; s.wc[rows - 1] *= 0.5;
    }

    auto split = [eps](double shift, int& off, double& frac) {
        double grid = shift / eps;
        double fl = std::floor(grid);
        off = static_cast<int>(fl);
        frac = grid - fl;
        if (frac > 1.0 - 1e-12) { off += 1; frac = 0.0; } // snap exact-integer shifts
        if (frac < 1e-12) frac = 0.0;
    };
    for (std::size_t i = 0; i < rows; ++i) {
        double y = static_cast<double>(i) * eps;
        split(-1.0 - y, s.o1[i], s.f1[i]);            // tap at X - 1 - Y
        split(t.y_hat[i] - 1.0, s.o2[i], s.f2[i]);    // tap at X - 1 + Yhat(Y)
        split(y - 1.0, s.o3[i], s.f3[i]);             // tap at X - 1 + Y
    }
    return s;
}

// Linear interpolation with constant continuation beyond the window.
inline double sample(const std::vector<double>& u, double c_minus, double c_plus,
                     long j, double frac) {
    const long n = static_cast<long>(u.size()) - 1;
    if (j < 0) return c_minus;
    if (j >= n) return (j == n && frac == 0.0) ? u[static_cast<std::size_t>(n)] : c_plus;
    double a = u[static_cast<std::size_t>(j)];
    return frac == 0.0 ? a : a + frac * (u[static_cast<std::size_t>(j + 1)] - a);
}

void rhs_range(const FieldState& s, const Stencil& st, std::size_t m0, std::size_t m1,
               std::vector<double>& out) {
    const auto& u = s.u;
    const double cm = s.c_minus, cp = s.c_plus;
    const double eps = s.eps;
    for (std::size_t m = m0; m < m1; ++m) {
        const double um = u[m];
        const long mm = static_cast<long>(m);
        double s_gain = 0.0, s_b = 0.0, s_c = 0.0;
        for (std::size_t i = 0; i < st.rows; ++i) {
            double u1 = sample(u, cm, cp, mm + st.o1[i], st.f1[i]);
            double u2 = sample(u, cm, cp, mm + st.o2[i], st.f2[i]);
            double u3 = sample(u, cm, cp, mm + st.o3[i], st.f3[i]);
            s_gain += st.wg[i] * u1 * (u2 - um);
            s_b += st.wb[i] * u1;
            s_c += st.wc[i] * u3;
        }
        out[m] = eps * (s_gain + um * (s_b - s_c));
    }
}

std::vector<double> eval_rhs(const FieldState& s, const Stencil& st, int threads) {
    std::vector<double> out(s.u.size());
    const std::size_t n = s.u.size();
    if (threads <= 1 || n < 256) {
        rhs_range(s, st, 0, n, out);
        return out;
    }
    std::size_t nt = std::min<std::size_t>(static_cast<std::size_t>(threads), 64);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    std::size_t chunk = (n + nt - 1) / nt;
    for (std::size_t k = 0; k < nt; ++k) {
        std::size_t lo = k * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] { rhs_range(s, st, lo, hi, out); });
    }
    for (auto& th : pool) th.join();
    return out;
}

} // namespace

double stability_cap(double eps, double a_simplex, double max_u) {
    if (!(eps > 0.0) || !(a_simplex > 0.0))
        throw DomainError("stability_cap: requires eps > 0 and A > 0");
    if (!(max_u > 0.0)) return std::numeric_limits<double>::infinity();
    return 0.2 * eps / (a_simplex * max_u);
}

FieldState make_initial(const SimConfig& cfg) {
    if (!(cfg.eps > 0.0) || !(cfg.L > cfg.eps))
        throw DomainError("make_initial: requires eps > 0 and L > eps");
    const std::size_t n = static_cast<std::size_t>(std::llround(cfg.L / cfg.eps));
    FieldState s;
    s.eps = cfg.eps;
    s.t = 0.0;
    s.u.assign(n + 1, 0.0);

    switch (cfg.init) {
        case InitKind::Riemann: {
            if (!(cfg.c_minus > 0.0)) throw DomainError("make_initial: riemann needs c_minus > 0");
            double w = cfg.ramp_width > 0.0 ? cfg.ramp_width : 5.0 * cfg.eps;
            if (!(cfg.riemann_x0 >= 0.0) || cfg.riemann_x0 + w > cfg.L)
                throw DomainError("make_initial: ramp does not fit in the domain");
            s.c_minus = cfg.c_minus;
            s.c_plus = 0.0;
            for (std::size_t i = 0; i <= n; ++i) {
                double x = static_cast<double>(i) * cfg.eps;
                if (x <= cfg.riemann_x0)
                    s.u[i] = cfg.c_minus;
                else if (x < cfg.riemann_x0 + w)
                    s.u[i] = cfg.c_minus * 0.5 * (1.0 + std::cos(pi * (x - cfg.riemann_x0) / w));
            }
            break;
        }
        case InitKind::Bump: {
            if (!(cfg.bump_width > 0.0) || !(cfg.bump_mass > 0.0))
                throw DomainError("make_initial: bump needs positive mass and width");
            s.c_minus = 0.0;
            s.c_plus = 0.0;
            double norm = cfg.bump_mass / (cfg.bump_width * std::sqrt(pi));
            for (std::size_t i = 0; i <= n; ++i) {
                double x = static_cast<double>(i) * cfg.eps;
                double r = (x - cfg.bump_center) / cfg.bump_width;
                s.u[i] = norm * std::exp(-r * r);
            }
            break;
        }
        case InitKind::File: {
            if (cfg.init_values.size() != n + 1)
                throw DomainError("make_initial: init_values must hold exactly round(L/eps)+1 samples");
            for (double v : cfg.init_values)
                if (!(v >= 0.0)) throw DomainError("make_initial: negative initial sample");
            s.u = cfg.init_values;
            s.c_minus = s.u.front();
            s.c_plus = s.u.back();
            break;
        }
    }
    return s;
}

std::vector<double> rhs(const FieldState& s, const WeightTables& tables, int threads) {
    if (std::abs(tables.eps - s.eps) > 1e-12 * s.eps)
        throw DomainError("rhs: table spacing does not match the field spacing");
    Stencil st = build_stencil(tables);
    return eval_rhs(s, st, threads);
}

SimResult simulate(const SimConfig& cfg, int threads) {
    KernelSpec kern = KernelSpec::alpha_family(cfg.alpha, NormMode::SimplexUnit);
    WeightTables tables = build_weight_tables(kern, cfg.eps, cfg.R);
    Stencil st = build_stencil(tables);

    SimResult res;
    res.cfg = cfg;
    res.a_simplex = burgers_constant(kern).value;

    FieldState s = make_initial(cfg);
    double max0 = 0.0;
    for (double v : s.u) max0 = std::max(max0, v);
    max0 = std::max({max0, s.c_minus, s.c_plus});
    if (!(max0 > 0.0)) throw DomainError("simulate: initial data is identically zero");

    res.tau_max = stability_cap(cfg.eps, res.a_simplex, max0);
    res.tau = cfg.tau > 0.0 ? cfg.tau : 0.5 * res.tau_max;
    if (res.tau > res.tau_max) {
        std::ostringstream msg;
        msg << "simulate: tau = " << res.tau
            << " exceeds the stability cap tau_max = " << res.tau_max;
        throw DomainError(msg.str());
    }
    if (!(cfg.t_end > 0.0)) throw DomainError("simulate: requires t_end > 0");
    if (!(cfg.snap_dt > 0.0)) throw DomainError("simulate: requires snap_dt > 0");

    auto mass_of = [&](const std::vector<double>& u) {
        double acc = 0.0;
        for (double v : u) acc += v;
        return acc * s.eps;
    };
    auto record = [&](double t) {
        res.snapshots.push_back({t, s.u});
        res.mass_series.emplace_back(t, mass_of(s.u));
    };
    record(0.0);

    const long n_steps = static_cast<long>(std::ceil(cfg.t_end / res.tau - 1e-9));
    long next_snap = 1;
    const double blow_cap = cfg.blowup_factor * max0;

    for (long step = 1; step <= n_steps; ++step) {
        double tau = res.tau;
        double t_next = static_cast<double>(step) * res.tau;
        if (t_next > cfg.t_end) {
            tau = cfg.t_end - static_cast<double>(step - 1) * res.tau;
            t_next = cfg.t_end;
        }
        std::vector<double> du = eval_rhs(s, st, threads);
        double hi = 0.0, lo = 0.0;
        for (std::size_t i = 0; i < s.u.size(); ++i) {
            s.u[i] += tau * du[i];
            hi = std::max(hi, s.u[i]);
            lo = std::min(lo, s.u[i]);
        }
        s.t = t_next;
        if (!(hi < blow_cap) || !std::isfinite(hi))
            throw BlowUp("simulate: field exceeded the blow-up cap");
        if (lo < -cfg.negativity_tol)
            throw NegativityBreach("simulate: field dropped below the negativity envelope");

        if (t_next >= static_cast<double>(next_snap) * cfg.snap_dt - 0.25 * res.tau ||
            step == n_steps) {
            record(t_next);
            next_snap = static_cast<long>(std::floor(t_next / cfg.snap_dt)) + 1;
        }
    }
    return res;
}

double front_position(const FieldState& s, double level) {
    if (!(level > 0.0)) throw DomainError("front_position: requires level > 0");
    const auto& u = s.u;
    for (std::size_t i = u.size(); i-- > 0;) {
        if (u[i] >= level) {
            double next = i + 1 < u.size() ? u[i + 1] : s.c_plus;
            double frac = u[i] > next ? (u[i] - level) / (u[i] - next) : 0.0;
            return (static_cast<double>(i) + std::min(frac, 1.0)) * s.eps;
        }
    }
    throw FrontNotFound("front_position: profile never reaches the level");
}

double traveling_wave_residual(const WaveProfile& prof, const KernelSpec& kern,
                               double b, const std::vector<double>& test_points,
                               const TwOptions& opts) {
    if (kern.variant() == KernelVariant::Diagonal ||
        (kern.variant() == KernelVariant::NearDiagonal && !kern.eta().is_uniform))
        throw DomainError("traveling_wave_residual: kernel must be pointwise-evaluable");
    const bool class_one = kern.classify() == Classification::ClassI;
    if (!class_one && (prof.limit_minus != 0.0 || prof.limit_plus != 0.0))
        throw DomainError("traveling_wave_residual: class II needs decaying flanks");

    // kernel-side truncation widths (0 = mechanism unavailable)
    double wz = 0.0, wy = 0.0;
    if (kern.variant() == KernelVariant::AlphaFamily && class_one) {
        double a = kern.alpha();
        double kappa = kern.norm_constant() * std::max(1.0, std::pow(2.0, 1.0 - 2.0 * a));
        double tol = std::max(opts.quad.abs_tol, 1e-12);
        wz = std::log(kappa / (a * (0.01 * tol))) / a;
        wy = std::log(kappa / (a * a * (0.01 * tol))) / a + 0.7;
    } else if (kern.variant() == KernelVariant::NearDiagonal) {
        // uniform band: K(e^W, 1) vanishes for |W| beyond the band width
        double e = kern.eta().eps;
        wz = wy = std::log((1.0 + 2.0 * e) / (1.0 - 2.0 * e)) + 0.6;
    }

    auto g = [&](double x) { return prof.g(x); };

    // The corner Y -> 0-, Z -> log(1 - e^Y) carries an integrable algebraic
    // singularity when the left flank decays (the kernel grows in the mass
    // ratio faster than the flank supplies decay), so the outer integral
    // uses a double-exponential rule instead of adaptive bisection.
    boost::math::quadrature::tanh_sinh<double> outer(15);
    const double outer_tol = std::max(opts.quad.rel_tol, 1e-9);

    double worst = 0.0;
    for (double x : test_points) {
        double y_lo = -1e9;
        if (wy > 0.0) y_lo = std::max(y_lo, -wy);
        if (prof.limit_minus == 0.0) y_lo = std::max(y_lo, opts.y_min_arg - x);
        if (y_lo <= -1e8) throw DomainError("traveling_wave_residual: no usable Y truncation");

        quad::Params inner = opts.quad;
        inner.abs_tol = 0.02 * std::max(opts.quad.abs_tol, 1e-12);

        auto inner_f = [&](double yy) {
            double one_minus = -std::expm1(yy); // 1 - e^Y without rounding to 0
            if (!(one_minus > 0.0)) return 0.0;
            double z0 = std::log(one_minus);
            double zhi = 1e9;
            if (wz > 0.0) zhi = std::min(zhi, yy + wz);
            if (prof.limit_plus == 0.0) zhi = std::min(zhi, opts.z_max_arg - x);
            zhi = std::max(zhi, z0 + 0.5);
            auto f = [&](double z) { return kern.kx1(std::exp(yy - z)) * g(x + z); };
            double v;
            if (z0 > -1e-4) // sliver below quadrature resolution: midpoint rule
                v = -z0 * f(0.5 * z0) + quad::integrate(f, 0.0, zhi, inner);
            else if (zhi > 0.0)
                v = quad::integrate(f, z0, 0.0, inner) + quad::integrate(f, 0.0, zhi, inner);
            else
                v = quad::integrate(f, z0, zhi, inner);
            return v * g(x + yy);
        };
        double err = 0.0, l1 = 0.0;
        double integral = outer.integrate(inner_f, y_lo, 0.0, outer_tol, &err, &l1);
        if (err > opts.quad.abs_tol && err > opts.quad.rel_tol * std::abs(integral))
            throw QuadratureNotConverged("traveling_wave_residual: outer error estimate " +
                                         std::to_string(err) + " exceeds tolerance");
        worst = std::max(worst, std::abs(b * g(x) - integral));
    }
    return worst;
}

} // namespace coag::wavesim
