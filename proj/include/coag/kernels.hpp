#pragma once

#include <optional>
#include <vector>

#include "coag/errors.hpp"
#include "coag/quadrature.hpp"

namespace coag {

enum class KernelVariant { AlphaFamily, Additive, Diagonal, NearDiagonal };

// SimplexUnit: c_alpha such that the simplex integral of K(x, 1-x) over
// x in (0,1) is 1. AUnit: c_alpha such that the double-exponential collision
// integral A equals 1 (requires alpha > 1).
enum class NormMode { SimplexUnit, AUnit };

enum class Classification { ClassI, ClassII };

// Symmetric mass-one density eta(s) on (-1/2, 1/2) describing a kernel
// concentrated near the diagonal: K(x, y) = (x + y) eta(x/(x+y) - 1/2).
struct EtaDensity {
    // eta = 1/(2*eps) on [-eps, eps]; pointwise-evaluable.
    static EtaDensity uniform(double eps);
    // atoms at +-s_i, each pair carrying weight_i (s = 0 is a single atom);
    // weights are normalized to total mass one. Distributional.
    static EtaDensity atoms(std::vector<std::pair<double, double>> s_weight);

    bool is_uniform = true;
    double eps = 0.05;
    std::vector<std::pair<double, double>> atom_list; // (s >= 0, weight)

    double support_radius() const;
};

// Homogeneity-one collision kernel. AlphaFamily is
//   K(x, y) = c_alpha x^alpha y^alpha (x + y)^(1 - 2 alpha),
// interpolating between the additive kernel (alpha = 0) and a kernel
// concentrated on the diagonal (alpha -> infinity).
class KernelSpec {
public:
    static KernelSpec alpha_family(double alpha, NormMode norm);
    static KernelSpec additive();
    static KernelSpec diagonal();
    static KernelSpec near_diagonal(EtaDensity eta);

    // Pointwise value K(x, y), x, y > 0. Throws DistributionalKernel for
    // Diagonal and atom-list NearDiagonal kernels.
    double eval(double x, double y) const;

    // K(x, 1) for pointwise-evaluable kernels; log-space evaluation keeps
    // large alpha and extreme x/y in range.
    double kx1(double x) const { return eval(x, 1.0); }

    // ClassII iff lim_{x->0} K(x, 1) > 0, i.e. a positive collision rate
    // between well-separated sizes survives the limit.
    Classification classify() const;

    KernelVariant variant() const { return variant_; }
    NormMode norm() const { return norm_; }
    double alpha() const;
    double norm_constant() const { return c_; }
    const EtaDensity& eta() const;

private:
    KernelSpec() = default;
    KernelVariant variant_ = KernelVariant::Additive;
    NormMode norm_ = NormMode::SimplexUnit;
    double alpha_ = 0.0;
    double c_ = 1.0;
    std::optional<EtaDensity> eta_;
};

// c_alpha for the requested normalization. SimplexUnit needs alpha >= 0,
// AUnit needs alpha > 1 (the defining integral diverges otherwise).
double normalization_constant(double alpha, NormMode mode);

struct BurgersConstant {
    bool divergent = false;
    double value = 0.0;
    double error_bound = 0.0; // quadrature estimate plus truncation tails
};

// A = int_{-inf}^0 dY int_{ln(1-e^Y)}^inf dZ K(e^{Y-Z}, 1): the effective
// Burgers flux constant. Divergent exactly for class II; ln 2 for the
// diagonal kernel; adaptive iterated quadrature for smooth class I kernels;
// the eta-average of the single-atom value for near-diagonal kernels.
BurgersConstant burgers_constant(const KernelSpec& kern, const quad::Params& params = {});

// Discretization weights of the base-2 evolution stencil, sampled on
// Y = i*eps, i = 0..round(R/eps):
//   w_gain(Y) = K(2^{Y+1} - 1, 1) / (1 - 2^{-1-Y})^2
//   w_loss(Y) = K(2^{-Y}, 1) 2^Y
//   y_hat(Y)  = log2(2 - 2^{-Y})          (0 at Y=0, -> 1 as Y -> inf)
// plus the shifted combinations the scheme consumes directly:
//   w_b(Y) = w_gain(Y) - w_loss(Y+1),  w_c(Y) = w_loss(1-Y).
struct WeightTables {
    double eps = 0.0;
    double R = 0.0;
    std::vector<double> w_gain, w_loss, y_hat;
    std::vector<double> w_b, w_c;
};

// Requires an AlphaFamily kernel in SimplexUnit normalization (the evolution
// scheme's convention).
WeightTables build_weight_tables(const KernelSpec& kern, double eps, double R);

} // namespace coag
