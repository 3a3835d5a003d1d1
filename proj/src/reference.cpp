#include "coag/reference.hpp"

#include <cmath>

#include "coag/special_functions.hpp"

namespace coag::ref {

double nwave(double x, double mass_m) {
    if (!(mass_m >= 0.0)) throw DomainError("nwave: requires M >= 0");
    if (x <= 0.0) return 0.0;
    return x <= 2.0 * std::sqrt(mass_m) ? 0.5 * x : 0.0;
}

double additive_g1(double x_big) {
    constexpr double inv_sqrt_two_pi = 0.39894228040143267794;
    return inv_sqrt_two_pi * std::exp(0.5 * x_big - 0.5 * std::exp(x_big));
}

namespace {

constexpr double pi = 3.14159265358979323846;

GRhoDetail g_rho_sum(double x_big, double rho, int n_terms) {
    if (!(rho > 0.0) || !(rho < 1.0))
        throw DomainError("additive_g_rho: requires rho in (0, 1)");
    if (n_terms < 5) throw DomainError("additive_g_rho: requires n_terms >= 5");
    const double a = rho / (1.0 + rho);

    // Reliability is judged on the envelope e^{j a X} Gamma(1 + j (1-a)) /
    // (pi j!), never on |term_j|: the sin factor has periodic zeros for
    // rational a that would make a growing tail look converged.
    GRhoDetail d;
    double sum = 0.0;
    double peak_env = 0.0;
    double env = 0.0, env_prev = 0.0;
    for (int j = 1; j <= n_terms; ++j) {
        double log_env = j * a * x_big + special::log_gamma(1.0 + j * (1.0 - a)) -
                         special::log_gamma(static_cast<double>(j) + 1.0) - std::log(pi);
        if (log_env > 690.0)
            throw SeriesDiverged("additive_g_rho: term overflow before truncation");
        env_prev = env;
        env = std::exp(log_env);
        sum += ((j % 2 == 1) ? 1.0 : -1.0) * env * std::sin(static_cast<double>(j) * pi * a);
        peak_env = std::max(peak_env, env);
    }
    d.last_term = env;
    d.peak_term = peak_env;
    d.terms_used = n_terms;
    if (!(peak_env > 0.0)) return d; // whole series underflows far on the left flank

    // the envelope ratio decreases in j, so the discarded tail is bounded by
    // a geometric series at the final ratio; an underflowed tail is converged
    double remainder = 0.0;
    if (env > 0.0 && env_prev > 0.0) {
        double q = env / env_prev;
        if (!(q < 1.0))
            throw SeriesDiverged("additive_g_rho: terms still growing at truncation");
        remainder = env * q / (1.0 - q);
    }
    // cancellation leaves summation roundoff of order the envelope peak
    double noise = peak_env * 1.1e-16 * std::sqrt(static_cast<double>(n_terms));
    if (!(sum > 0.0) || remainder + noise > 1e-3 * sum)
        throw SeriesDiverged("additive_g_rho: cancellation exhausts the sum");
    d.value = sum;
    return d;
}

} // namespace

double additive_g_rho(double x_big, double rho, int n_terms) {
    return g_rho_sum(x_big, rho, n_terms).value;
}

GRhoDetail additive_g_rho_detail(double x_big, double rho, int n_terms) {
    return g_rho_sum(x_big, rho, n_terms);
}

double g_rho_left_coefficient(double rho) {
    if (!(rho > 0.0) || !(rho < 1.0))
        throw DomainError("g_rho_left_coefficient: requires rho in (0, 1)");
    double a = rho / (1.0 + rho);
    return std::sin(pi * a) * std::exp(special::log_gamma(2.0 - a)) / pi;
}

double g_rho_right_coefficient(double rho) {
    if (!(rho > 0.0) || !(rho < 1.0))
        throw DomainError("g_rho_right_coefficient: requires rho in (0, 1)");
    return std::exp(special::log_gamma(2.0 + rho)) * std::sin(pi * rho) / pi;
}

double series_window_max_x(double rho, int n_terms) {
    double best = 0.0;
    for (double x = 0.0; x <= 12.0 + 1e-9; x += 0.25) {
        try {
            (void)additive_g_rho(x, rho, n_terms);
            best = x;
        } catch (const SeriesDiverged&) {
            break;
        }
    }
    return best;
}

double rho_to_b(double rho, double k0) {
    if (!(rho > 0.0)) throw DomainError("rho_to_b: requires rho > 0");
    if (!(k0 > 0.0)) throw DomainError("rho_to_b: requires k0 > 0");
    return k0 * (1.0 + rho) / rho;
}

std::vector<std::pair<double, double>> selfsim_to_wave(
    const std::vector<std::pair<double, double>>& xy) {
    std::vector<std::pair<double, double>> out;
    out.reserve(xy.size());
    for (auto& [x, phi] : xy) {
        if (!(x > 0.0)) throw DomainError("selfsim_to_wave: requires x > 0");
        out.emplace_back(std::log(x), x * x * phi);
    }
    return out;
}

std::vector<std::pair<double, double>> wave_to_selfsim(
    const std::vector<std::pair<double, double>>& xg) {
    std::vector<std::pair<double, double>> out;
    out.reserve(xg.size());
    for (auto& [x_big, g] : xg) {
        double x = std::exp(x_big);
        out.emplace_back(x, g / (x * x));
    }
    return out;
}

int oscillation_count(const std::vector<double>& u, double baseline, double floor_gate) {
    if (!(floor_gate > 0.0)) throw DomainError("oscillation_count: requires floor_gate > 0");
    int count = 0;
    int confirmed_sign = 0; // sign of the last excursion that cleared the gate
    for (double v : u) {
        double d = v - baseline;
        if (std::abs(d) < floor_gate) continue;
        int s = d > 0.0 ? 1 : -1;
        if (confirmed_sign != 0 && s != confirmed_sign) ++count;
        confirmed_sign = s;
    }
    return count;
}

} // namespace coag::ref
