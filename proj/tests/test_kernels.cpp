#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "coag/kernels.hpp"

using namespace coag;

// Reference values in this file come from independent 50-digit computations.

TEST_CASE("normalization constants") {
    CHECK(normalization_constant(1.0, NormMode::SimplexUnit) == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(normalization_constant(2.0, NormMode::SimplexUnit) == doctest::Approx(30.0).epsilon(1e-12));
    CHECK(normalization_constant(0.6, NormMode::SimplexUnit) ==
          doctest::Approx(3.0361442104345519615).epsilon(1e-12));
    CHECK(normalization_constant(0.0, NormMode::SimplexUnit) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(normalization_constant(35.0, NormMode::SimplexUnit) ==
          doctest::Approx(7.9652257249830620257e21).epsilon(1e-11));

    CHECK(normalization_constant(2.0, NormMode::AUnit) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(normalization_constant(1.5, NormMode::AUnit) ==
          doctest::Approx(1.6480172543083007484).epsilon(1e-12));
    CHECK(normalization_constant(8.0, NormMode::AUnit) ==
          doctest::Approx(36471.55145321037532).epsilon(1e-12));

    CHECK_THROWS_AS((void)normalization_constant(-0.5, NormMode::SimplexUnit), DomainError);
    CHECK_THROWS_AS((void)normalization_constant(1.0, NormMode::AUnit), DomainError);
    CHECK_THROWS_AS((void)normalization_constant(0.5, NormMode::AUnit), DomainError);
}

TEST_CASE("simplex normalization integrates to one") {
    // int_0^1 K(x, 1-x) dx = 1 defines SimplexUnit. The error estimate stays
    // conservative for fractional alpha (endpoint derivative singularities),
    // so the tolerance passed to the quadrature is looser than the check.
    for (double alpha : {0.6, 2.0, 8.0}) {
        auto k = KernelSpec::alpha_family(alpha, NormMode::SimplexUnit);
        double v = quad::integrate([&](double x) { return k.eval(x, 1.0 - x); }, 1e-14,
                                   1.0 - 1e-14, {1e-7, 1e-8, 30, 4});
        CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("kernel evaluation") {
    auto add = KernelSpec::additive();
    CHECK(add.eval(2.0, 3.0) == doctest::Approx(5.0));
    CHECK(add.classify() == Classification::ClassII);

    auto k1 = KernelSpec::alpha_family(1.0, NormMode::SimplexUnit);
    // c x y / (x+y): 6*2*3/5
    CHECK(k1.eval(2.0, 3.0) == doctest::Approx(7.2).epsilon(1e-12));
    CHECK(k1.eval(3.0, 2.0) == doctest::Approx(k1.eval(2.0, 3.0)).epsilon(1e-14));
    // homogeneity one
    CHECK(k1.eval(20.0, 30.0) == doctest::Approx(72.0).epsilon(1e-12));
    CHECK(k1.classify() == Classification::ClassI);

    // alpha = 0 reduces to the additive kernel
    auto k0 = KernelSpec::alpha_family(0.0, NormMode::SimplexUnit);
    CHECK(k0.eval(2.0, 3.0) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(k0.classify() == Classification::ClassII);

    // large alpha at extreme arguments stays finite (log-space evaluation)
    auto k35 = KernelSpec::alpha_family(35.0, NormMode::SimplexUnit);
    double v = k35.eval(std::exp2(40.0), 1.0);
    CHECK(std::isfinite(v));
    CHECK(v >= 0.0);

    CHECK_THROWS_AS((void)add.eval(0.0, 1.0), DomainError);
    CHECK_THROWS_AS((void)KernelSpec::diagonal().eval(1.0, 1.0), DistributionalKernel);
    CHECK(KernelSpec::diagonal().classify() == Classification::ClassI);
}

TEST_CASE("near-diagonal kernels") {
    auto nd = KernelSpec::near_diagonal(EtaDensity::uniform(0.05));
    CHECK(nd.classify() == Classification::ClassI);
    // on the diagonal s = 0: (x+y) * 1/(2 eps)
    CHECK(nd.eval(1.0, 1.0) == doctest::Approx(20.0).epsilon(1e-12));
    CHECK(nd.eval(1.0, 2.0) == doctest::Approx(0.0)); // s = -1/6 outside the band

    auto atoms = KernelSpec::near_diagonal(EtaDensity::atoms({{0.1, 1.0}}));
    CHECK_THROWS_AS((void)atoms.eval(1.0, 1.0), DistributionalKernel);
    CHECK(atoms.eta().support_radius() == doctest::Approx(0.1));

    CHECK_THROWS_AS((void)EtaDensity::uniform(0.7), DomainError);
    CHECK_THROWS_AS((void)EtaDensity::atoms({{0.6, 1.0}}), DomainError);
    CHECK_THROWS_AS((void)EtaDensity::atoms({}), DomainError);
}

TEST_CASE("collision flux constant") {
    // closed forms: alpha = 2 gives 15/2, alpha = 3 gives 245/36
    auto b2 = burgers_constant(KernelSpec::alpha_family(2.0, NormMode::SimplexUnit));
    CHECK_FALSE(b2.divergent);
    CHECK(b2.value == doctest::Approx(7.5).epsilon(1e-8));
    CHECK(b2.error_bound < 1e-6);

    auto b3 = burgers_constant(KernelSpec::alpha_family(3.0, NormMode::SimplexUnit));
    CHECK(b3.value == doctest::Approx(6.8055555555555555556).epsilon(1e-8));

    auto b8 = burgers_constant(KernelSpec::alpha_family(8.0, NormMode::SimplexUnit));
    CHECK(b8.value == doctest::Approx(5.9989222087436373151).epsilon(1e-8));

    // AUnit normalization makes the constant exactly one
    auto ba = burgers_constant(KernelSpec::alpha_family(8.0, NormMode::AUnit));
    CHECK(ba.value == doctest::Approx(1.0).epsilon(1e-8));

    // class II diverges
    CHECK(burgers_constant(KernelSpec::additive()).divergent);
    CHECK(burgers_constant(KernelSpec::alpha_family(0.0, NormMode::SimplexUnit)).divergent);

    // diagonal limit is ln 2
    auto bd = burgers_constant(KernelSpec::diagonal());
    CHECK_FALSE(bd.divergent);
    CHECK(bd.value == doctest::Approx(0.69314718055994530942).epsilon(1e-14));

    // near-diagonal: eta-average of the single-fiber value
    auto bu = burgers_constant(KernelSpec::near_diagonal(EtaDensity::uniform(0.05)));
    CHECK(bu.value == doctest::Approx(5.5689725740468115957).epsilon(1e-10));
    auto bat = burgers_constant(KernelSpec::near_diagonal(EtaDensity::atoms({{0.1, 2.0}})));
    CHECK(bat.value == doctest::Approx(5.8421151650109065625).epsilon(1e-12));

    // the family interpolates toward the diagonal value 8 ln 2 ~ 5.5452
    auto b35 = burgers_constant(KernelSpec::alpha_family(35.0, NormMode::SimplexUnit));
    CHECK(b35.value == doctest::Approx(5.647009778472309782).epsilon(1e-8));
}

TEST_CASE("weight tables") {
    auto kern = KernelSpec::alpha_family(8.0, NormMode::SimplexUnit);
    auto t = build_weight_tables(kern, 0.05, 25.0);
    REQUIRE(t.w_gain.size() == 501);
    CHECK(t.eps == doctest::Approx(0.05));

    double k11 = kern.eval(1.0, 1.0);
    CHECK(t.w_gain[0] == doctest::Approx(4.0 * k11).epsilon(1e-12));
    CHECK(t.w_loss[0] == doctest::Approx(k11).epsilon(1e-12));
    CHECK(t.y_hat[0] == doctest::Approx(0.0));
    CHECK(t.y_hat.back() == doctest::Approx(1.0).epsilon(1e-6));

    // spot-check the defining formulas at an interior row
    std::size_t i = 100;
    double y = 0.05 * static_cast<double>(i);
    CHECK(t.w_gain[i] ==
          doctest::Approx(kern.eval(std::exp2(y + 1.0) - 1.0, 1.0) /
                          ((1.0 - std::exp2(-1.0 - y)) * (1.0 - std::exp2(-1.0 - y))))
              .epsilon(1e-12));
    CHECK(t.w_loss[i] == doctest::Approx(kern.eval(std::exp2(-y), 1.0) * std::exp2(y)).epsilon(1e-12));
    CHECK(t.w_b[i] == doctest::Approx(t.w_gain[i] -
                                      kern.eval(std::exp2(-y - 1.0), 1.0) * std::exp2(y + 1.0))
                          .epsilon(1e-12));
    CHECK(t.w_c[i] == doctest::Approx(kern.eval(std::exp2(y - 1.0), 1.0) * std::exp2(1.0 - y))
                          .epsilon(1e-12));

    // weights decay geometrically in Y for alpha > 1
    CHECK(std::abs(t.w_gain[400]) < 1e-30 * std::abs(t.w_gain[0]));

    CHECK_THROWS_AS((void)build_weight_tables(KernelSpec::additive(), 0.05, 25.0), DomainError);
    CHECK_THROWS_AS((void)build_weight_tables(
                        KernelSpec::alpha_family(8.0, NormMode::AUnit), 0.05, 25.0),
                    DomainError);
    CHECK_THROWS_AS((void)build_weight_tables(kern, -0.1, 25.0), DomainError);
}
