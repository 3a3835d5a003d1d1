#include "coag/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "coag/special_functions.hpp"

namespace coag::spectral {

namespace {

using special::digamma;
using special::log_gamma;

constexpr cplx iu{0.0, 1.0};

struct ClosedParts {
    cplx e1, e2, e3;
    double dpsi;
};

// Collision symbol against the constant wave, AUnit units. Written as beta
// ratios so only gamma-log differences appear:
//   M(k) = -(1 - E1 + E2 - E3) / dpsi
//   E1 = B(alpha + ik, alpha - 1) / B(alpha, alpha - 1)
//   E2 = B(alpha - ik, alpha - 1 + ik) / B(alpha, alpha - 1)
//   E3 = B(alpha, alpha - 1 + ik) / B(alpha, alpha - 1)
//   dpsi = psi(2 alpha - 1) - psi(alpha)
ClosedParts closed_parts(double alpha, cplx k) {
    if (!(alpha > 1.0)) throw DomainError("m_alpha_closed: requires alpha > 1");
    ClosedParts p;
    cplx ik = iu * k;
    double lg_a = log_gamma(alpha);
    double lg_am1 = log_gamma(alpha - 1.0);
    double lg_2am1 = log_gamma(2.0 * alpha - 1.0);
    p.e1 = std::exp(lg_2am1 - lg_a + log_gamma(alpha + ik) - log_gamma(2.0 * alpha - 1.0 + ik));
    p.e2 = std::exp(log_gamma(alpha - 1.0 + ik) - lg_am1 + log_gamma(alpha - ik) - lg_a);
    p.e3 = std::exp(lg_2am1 - lg_am1 + log_gamma(alpha - 1.0 + ik) - log_gamma(2.0 * alpha - 1.0 + ik));
    p.dpsi = digamma(2.0 * alpha - 1.0) - digamma(alpha);
    return p;
}

} // namespace

cplx m_alpha_closed(double alpha, cplx k) {
    if (k == cplx(0.0, 0.0)) return 0.0;
    auto p = closed_parts(alpha, k);
    return -(1.0 - p.e1 + p.e2 - p.e3) / p.dpsi;
}

cplx m_alpha_closed_derivative(double alpha, cplx k) {
    auto p = closed_parts(alpha, k);
    cplx ik = iu * k;
    cplx d1 = p.e1 * iu * (digamma(alpha + ik) - digamma(2.0 * alpha - 1.0 + ik));
    cplx d2 = p.e2 * iu * (digamma(alpha - 1.0 + ik) - digamma(alpha - ik));
    cplx d3 = p.e3 * iu * (digamma(alpha - 1.0 + ik) - digamma(2.0 * alpha - 1.0 + ik));
    return (d1 - d2 + d3) / p.dpsi;
}

MQuadResult m_quadrature(const KernelSpec& kern, double k, const quad::Params& params) {
    if (kern.variant() != KernelVariant::AlphaFamily || kern.classify() != Classification::ClassI)
        throw DomainError("m_quadrature: requires a class I alpha-family kernel");
    MQuadResult out;
    if (k == 0.0) return out; // the oscillatory factor vanishes identically

    // Homogeneity collapses the collision integral to the cross-section
    // x + y = 1:
    //   M(k) = -int_0^1 K(x, 1-x) / (x (1-x)^2) (1 - x^{ik}) (1 + ((1-x)/x)^{ik}) dx.
    // Each half is integrated in the log of the small variable, where the
    // integrand decays like exp(alpha t) and oscillates at frequency <= 2|k|.
    const double a = kern.alpha();
    const double c = kern.norm_constant();
    const double tol = std::max(params.abs_tol, 1e-13);
    const double ln2 = std::log(2.0);
    const double t_min = std::min(-ln2, std::log(tol * a / (32.0 * c)) / a);
    const double u_min =
        std::min(-ln2, std::log(tol * a / (16.0 * c * std::max(1.0, std::abs(k)))) / a);

    // (1 - x^{ik}) (1 + (y/x)^{ik}) from the logs of x and y
    auto bracket = [&](double lx, double ly) {
        auto osc = [&](double l) { return std::exp(iu * (k * l)); };
        return (1.0 - osc(lx)) * (1.0 + osc(ly - lx));
    };
    auto left = [&](double t) { // x = e^t, measure dx = x dt
        double x = std::exp(t), y = 1.0 - x;
        return kern.eval(x, y) / (y * y) * bracket(t, std::log1p(-x));
    };
    auto right = [&](double u) { // y = e^u, measure dx = -y du
        double y = std::exp(u), x = 1.0 - y;
        return kern.eval(x, y) / (x * y) * bracket(std::log1p(-y), u);
    };

    // panel length keeps both the oscillation and the exponential envelope
    // resolved by a single Gauss-Kronrod rule
    const double len = std::min(1.5 / std::max(1.0, std::abs(k)), 6.0 / a);
    quad::Params side = params;
    side.rel_tol = std::max(params.rel_tol, 1e-11);
    side.max_depth = std::min(params.max_depth, 12u);

    cplx total = 0.0;
    double err = 0.0;
    auto add_side = [&](auto&& f, double lo) {
        double range = -ln2 - lo;
        side.panels = std::max(1, static_cast<int>(std::ceil(range / len)));
        auto re = quad::integrate_reporting([&](double t) { return f(t).real(); }, lo, -ln2, side);
        auto im = quad::integrate_reporting([&](double t) { return f(t).imag(); }, lo, -ln2, side);
        total += cplx{re.value, im.value};
        err += re.error + im.error;
    };
    add_side(left, t_min);
    add_side(right, u_min);

    // discarded tails: |left| <= 16 c e^{a t}, |right| <= 4 c |k| e^{a u}
    double tails = 16.0 * c * std::exp(a * t_min) / a +
                   4.0 * c * std::max(1.0, std::abs(k)) * std::exp(a * u_min) / a;
    out.value = -total;
    out.truncation_bound = err + tails;
    return out;
}

ScanResult stability_scan(double alpha, double k_max, double dk) {
    if (!(alpha > 1.0)) throw DomainError("stability_scan: requires alpha > 1");
    if (!(k_max > 0.0) || !(dk > 0.0) || dk > k_max)
        throw DomainError("stability_scan: requires 0 < dk <= k_max");
    // Re M is even in k along the real axis; scan k >= 0
    const int n = static_cast<int>(std::ceil(k_max / dk));
    auto re_m = [&](double k) { return m_alpha_closed(alpha, k).real(); };

    std::vector<double> vals(n + 1);
    for (int i = 0; i <= n; ++i) vals[i] = re_m(std::min(static_cast<double>(i) * dk, k_max));

    ScanResult res;
    res.max_re = vals[0];
    res.argmax_k = 0.0;
    for (int i = 1; i <= n; ++i) {
        double k = std::min(static_cast<double>(i) * dk, k_max);
        if (vals[i] > res.max_re) {
            res.max_re = vals[i];
            res.argmax_k = k;
        }
    }

    // golden-section refinement around every interior local maximum
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int i = 1; i < n; ++i) {
        if (!(vals[i] >= vals[i - 1] && vals[i] >= vals[i + 1])) continue;
        double lo = (i - 1) * dk, hi = (i + 1) * dk;
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        double f1 = re_m(x1), f2 = re_m(x2);
        for (int it = 0; it < 60 && hi - lo > 1e-11 * std::max(1.0, hi); ++it) {
            if (f1 < f2) {
                lo = x1; x1 = x2; f1 = f2;
                x2 = lo + gr * (hi - lo); f2 = re_m(x2);
            } else {
                hi = x2; x2 = x1; f2 = f1;
                x1 = hi - gr * (hi - lo); f1 = re_m(x1);
            }
        }
        double km = 0.5 * (lo + hi), fm = re_m(km);
        if (fm > res.max_re) {
            res.max_re = fm;
            res.argmax_k = km;
        }
    }

    // M(0) = 0 exactly; the verdict tolerates only roundoff above zero
    res.stable = res.max_re <= 1e-10;
    return res;
}

std::vector<Root> dispersion_roots(double alpha, const RootSearchOptions& opts) {
    if (!(alpha > 1.0)) throw DomainError("dispersion_roots: requires alpha > 1");
    auto f = [&](cplx k) { return m_alpha_closed(alpha, k) + iu * k; };
    auto fp = [&](cplx k) { return m_alpha_closed_derivative(alpha, k) + iu; };

    std::vector<Root> found;
    auto try_seed = [&](cplx seed) {
        cplx k = seed;
        for (int it = 0; it < opts.max_newton; ++it) {
            cplx fv, dv;
            try {
                fv = f(k);
                dv = fp(k);
            } catch (const DomainError&) {
                return; // ran into a gamma pole; discard this seed
            }
            if (std::abs(dv) < 1e-14) return;
            cplx step = fv / dv;
            k -= step;
            if (std::abs(k) > 200.0 || k.imag() > 1.0) return;
            if (std::abs(step) < 1e-13 && std::abs(fv) < opts.accept_residual) break;
        }
        double resid;
        try {
            resid = std::abs(f(k));
        } catch (const DomainError&) {
            return;
        }
        if (resid > opts.accept_residual) return;
        // k = 0 solves the relation for every alpha; only strictly decaying
        // modes count
        if (k.imag() > opts.im_max || k.imag() < opts.im_min - 1.0) return;
        if (k.real() < opts.re_min - 1.0 || k.real() > opts.re_max + 1.0) return;
        for (const auto& r : found)
            if (std::abs(r.k - k) < opts.dedup_tol) return;
        found.push_back({k, resid, false});
    };

    for (double re = opts.re_min; re <= opts.re_max + 1e-12; re += opts.seed_step)
        for (double im = opts.im_max; im >= opts.im_min - 1e-12; im -= opts.seed_step)
            try_seed({re, im});

    if (found.empty()) throw NoRootFound("dispersion_roots: no roots in the search region");

    std::sort(found.begin(), found.end(), [](const Root& a, const Root& b) {
        if (a.k.imag() != b.k.imag()) return a.k.imag() > b.k.imag();
        return a.k.real() < b.k.real();
    });
    double im_top = found.front().k.imag();
    for (auto& r : found) r.dominant = r.k.imag() >= im_top - 1e-9;
    return found;
}

cplx near_diagonal_w(double k, double s) {
    if (!(std::abs(s) < 0.5)) throw DomainError("near_diagonal_w: requires |s| < 1/2");
    double m1 = 1.0 - 2.0 * s, p1 = 1.0 + 2.0 * s;
    double pre = 8.0 / (m1 * m1 * p1);
    auto osc = [&](double r) { return std::exp(iu * (k * std::log(r))); };
    return pre * (1.0 + osc(m1 / p1) - osc(p1 / 2.0) - osc(m1 / 2.0));
}

cplx near_diagonal_m(const EtaDensity& eta, double k, const quad::Params& params) {
    if (eta.is_uniform) {
        auto re = quad::integrate_reporting(
            [&](double s) { return near_diagonal_w(k, s).real() / (2.0 * eta.eps); },
            -eta.eps, eta.eps, params);
        auto im = quad::integrate_reporting(
            [&](double s) { return near_diagonal_w(k, s).imag() / (2.0 * eta.eps); },
            -eta.eps, eta.eps, params);
        return -cplx{re.value, im.value};
    }
    cplx acc = 0.0;
    for (auto& [s, w] : eta.atom_list)
        acc += 0.5 * w * (near_diagonal_w(k, s) + near_diagonal_w(k, -s));
    return -acc;
}

double to_sim_wavenumber(double k_natural) { return k_natural * std::log(2.0); }

double to_sim_growth_rate(double re_m) { return re_m / std::log(2.0); }

} // namespace coag::spectral
