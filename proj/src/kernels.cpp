#include "coag/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "coag/special_functions.hpp"

namespace coag {

EtaDensity EtaDensity::uniform(double eps) {
    if (!(eps > 0.0) || !(eps < 0.5))
        throw DomainError("EtaDensity::uniform: eps must lie in (0, 1/2)");
    EtaDensity d;
    d.is_uniform = true;
    d.eps = eps;
    return d;
}

EtaDensity EtaDensity::atoms(std::vector<std::pair<double, double>> s_weight) {
    if (s_weight.empty()) throw DomainError("EtaDensity::atoms: empty atom list");
    double total = 0.0;
    for (auto& [s, w] : s_weight) {
        if (!(s >= 0.0) || !(s < 0.5))
            throw DomainError("EtaDensity::atoms: atom position must lie in [0, 1/2)");
        if (!(w > 0.0)) throw DomainError("EtaDensity::atoms: weights must be positive");
        total += w;
    }
    EtaDensity d;
    d.is_uniform = false;
    d.eps = 0.0;
    d.atom_list = std::move(s_weight);
    for (auto& [s, w] : d.atom_list) w /= total;
    std::sort(d.atom_list.begin(), d.atom_list.end());
    return d;
}

double EtaDensity::support_radius() const {
    if (is_uniform) return eps;
    return atom_list.back().first;
}

KernelSpec KernelSpec::alpha_family(double alpha, NormMode norm) {
    KernelSpec k;
    k.variant_ = KernelVariant::AlphaFamily;
    k.norm_ = norm;
    k.alpha_ = alpha;
    k.c_ = normalization_constant(alpha, norm);
    return k;
}

KernelSpec KernelSpec::additive() {
    KernelSpec k;
    k.variant_ = KernelVariant::Additive;
    k.norm_ = NormMode::SimplexUnit;
    k.alpha_ = 0.0;
    k.c_ = 1.0;
    return k;
}

KernelSpec KernelSpec::diagonal() {
    KernelSpec k;
    k.variant_ = KernelVariant::Diagonal;
    k.norm_ = NormMode::SimplexUnit;
    k.c_ = 1.0;
    return k;
}

KernelSpec KernelSpec::near_diagonal(EtaDensity eta) {
    KernelSpec k;
    k.variant_ = KernelVariant::NearDiagonal;
    k.norm_ = NormMode::SimplexUnit;
    k.c_ = 1.0;
    k.eta_ = std::move(eta);
    return k;
}

double KernelSpec::eval(double x, double y) const {
    if (!(x > 0.0) || !(y > 0.0)) throw DomainError("KernelSpec::eval: requires x, y > 0");
    switch (variant_) {
        case KernelVariant::Additive:
            return x + y;
        case KernelVariant::AlphaFamily:
            // log-space keeps x^alpha in range for large alpha and extreme x/y
            return std::exp(std::log(c_) + alpha_ * (std::log(x) + std::log(y)) +
                            (1.0 - 2.0 * alpha_) * std::log(x + y));
        case KernelVariant::Diagonal:
            throw DistributionalKernel("diagonal kernel has no pointwise values");
        case KernelVariant::NearDiagonal: {
            const EtaDensity& d = *eta_;
            if (!d.is_uniform)
                throw DistributionalKernel("atomic near-diagonal kernel has no pointwise values");
            double s = x / (x + y) - 0.5;
            return std::abs(s) < d.eps ? (x + y) / (2.0 * d.eps) : 0.0;
        }
    }
    throw Error("KernelSpec::eval: unreachable");
}

Classification KernelSpec::classify() const {
    switch (variant_) {
        case KernelVariant::Additive:
            return Classification::ClassII;
        case KernelVariant::AlphaFamily:
            return alpha_ == 0.0 ? Classification::ClassII : Classification::ClassI;
        case KernelVariant::Diagonal:
        case KernelVariant::NearDiagonal:
            return Classification::ClassI;
    }
    throw Error("KernelSpec::classify: unreachable");
}

double KernelSpec::alpha() const {
    if (variant_ != KernelVariant::AlphaFamily)
        throw DomainError("KernelSpec::alpha: not an alpha-family kernel");
    return alpha_;
}

const EtaDensity& KernelSpec::eta() const {
    if (!eta_) throw DomainError("KernelSpec::eta: not a near-diagonal kernel");
    return *eta_;
}

double normalization_constant(double alpha, NormMode mode) {
    using special::digamma;
    using special::log_gamma;
    if (mode == NormMode::SimplexUnit) {
        if (!(alpha >= 0.0))
            throw DomainError("normalization_constant: SimplexUnit requires alpha >= 0");
        return std::exp(log_gamma(2.0 + 2.0 * alpha) - 2.0 * log_gamma(1.0 + alpha));
    }
    if (!(alpha > 1.0)) throw DomainError("normalization_constant: AUnit requires alpha > 1");
    double log_b = special::log_beta(alpha, alpha - 1.0);
    double dpsi = digamma(2.0 * alpha - 1.0) - digamma(alpha);
    return 1.0 / (std::exp(log_b) * dpsi);
}

namespace {

// A = int_{-inf}^0 dY int_{ln(1 - e^Y)}^inf dZ K(e^{Y-Z}, 1) for a smooth
// class I alpha kernel. K(e^W, 1) <= kappa e^{alpha W} for W <= 0 with
// kappa = c max(1, 2^{1-2 alpha}); both truncation tails are geometric.
BurgersConstant burgers_alpha(const KernelSpec& kern, const quad::Params& params) {
    const double a = kern.alpha();
    const double kappa = kern.norm_constant() * std::max(1.0, std::pow(2.0, 1.0 - 2.0 * a));
    const double tol = std::max(params.abs_tol, 1e-13);
    const double ztol = 0.02 * tol; // inner tail, integrated over |Ylo| <= ~50
    // kappa e^{a(Y - Zhi)} / a <= ztol  =>  Zhi >= Y + wz
    const double wz = std::log(kappa / (a * ztol)) / a;
    // whole-Y tail: int_{-inf}^{Ylo} kappa e^{a(Y-Z0)}/a dY with Z0 >= -0.7
    const double wy = std::log(kappa / (a * a * (0.2 * tol))) / a + 0.7;
    const double y_lo = -std::max(wy, 2.0);

    quad::Params inner = params;
    inner.abs_tol = 0.02 * tol;
    inner.rel_tol = std::min(params.rel_tol, 1e-10);
    inner.max_depth = std::max(params.max_depth, 22u);

    double tail_total = 0.0;
    double inner_err = 0.0;
    auto inner_f = [&](double y) {
        double z0 = std::log1p(-std::exp(y));
        double zhi = std::max(z0 + 0.5, y + wz);
        auto f = [&](double z) { return kern.kx1(std::exp(y - z)); };
        double v = 0.0;
        if (z0 < 0.0 && zhi > 0.0) {
            auto r1 = quad::integrate_reporting(f, z0, 0.0, inner);
            auto r2 = quad::integrate_reporting(f, 0.0, zhi, inner);
            v = r1.value + r2.value;
            inner_err = std::max(inner_err, r1.error + r2.error);
        } else {
            auto r = quad::integrate_reporting(f, z0, zhi, inner);
            v = r.value;
            inner_err = std::max(inner_err, r.error);
        }
        tail_total = std::max(tail_total, kappa * std::exp(a * (y - zhi)) / a);
        return v;
    };

    quad::Params outer = params;
    outer.max_depth = std::max(params.max_depth, 24u);
    auto res = quad::integrate_reporting(inner_f, y_lo, 0.0, outer);

    BurgersConstant out;
    out.value = res.value;
    out.error_bound = res.error + (-y_lo) * (inner_err + tail_total) + 0.2 * tol;
    return out;
}

// Single-fiber near-diagonal value: collapsing eta to an atom at s gives
// A(s) = 8 ln(1 + e^{-theta}) / ((1-2s)^2 (1+2s)), theta = ln((1+2s)/(1-2s)).
double near_diagonal_a(double s) {
    double theta = std::log((1.0 + 2.0 * s) / (1.0 - 2.0 * s));
    return 8.0 * std::log1p(std::exp(-theta)) /
           ((1.0 - 2.0 * s) * (1.0 - 2.0 * s) * (1.0 + 2.0 * s));
}

} // namespace

BurgersConstant burgers_constant(const KernelSpec& kern, const quad::Params& params) {
    BurgersConstant out;
    if (kern.classify() == Classification::ClassII) {
        out.divergent = true;
        return out;
    }
    switch (kern.variant()) {
        case KernelVariant::Diagonal:
            out.value = std::log(2.0);
            return out;
        case KernelVariant::NearDiagonal: {
            const EtaDensity& d = kern.eta();
            if (d.is_uniform) {
                auto r = quad::integrate_reporting(
                    [&](double s) { return near_diagonal_a(s) / (2.0 * d.eps); }, -d.eps,
                    d.eps, params);
                out.value = r.value;
                out.error_bound = r.error;
            } else {
                for (auto& [s, w] : d.atom_list)
                    out.value += 0.5 * w * (near_diagonal_a(s) + near_diagonal_a(-s));
            }
            return out;
        }
        case KernelVariant::AlphaFamily:
            return burgers_alpha(kern, params);
        case KernelVariant::Additive:
            break;
    }
    throw Error("burgers_constant: unreachable");
}

WeightTables build_weight_tables(const KernelSpec& kern, double eps, double R) {
    if (kern.variant() != KernelVariant::AlphaFamily || kern.norm() != NormMode::SimplexUnit)
        throw DomainError("build_weight_tables: requires an alpha-family kernel in "
                          "SimplexUnit normalization");
    if (!(eps > 0.0) || !(R >= 1.0))
        throw DomainError("build_weight_tables: requires eps > 0 and R >= 1");

    const std::size_t n = static_cast<std::size_t>(std::llround(R / eps));
    WeightTables t;
    t.eps = eps;
    t.R = R;
    t.w_gain.resize(n + 1);
    t.w_loss.resize(n + 1);
    t.y_hat.resize(n + 1);
    t.w_b.resize(n + 1);
    t.w_c.resize(n + 1);

    auto w_gain_at = [&](double y) {
        double g = std::exp2(y + 1.0) - 1.0; // 2^{Y+1} - 1 >= 1
        double d = 1.0 - std::exp2(-1.0 - y);
        return kern.kx1(g) / (d * d);
    };
    auto w_loss_at = [&](double y) { return kern.kx1(std::exp2(-y)) * std::exp2(y); };

    for (std::size_t i = 0; i <= n; ++i) {
        double y = static_cast<double>(i) * eps;
        t.w_gain[i] = w_gain_at(y);
        t.w_loss[i] = w_loss_at(y);
        t.y_hat[i] = std::log2(2.0 - std::exp2(-y));
        t.w_b[i] = t.w_gain[i] - w_loss_at(y + 1.0);
        t.w_c[i] = w_loss_at(1.0 - y);
    }
    return t;
}

} // namespace coag
