#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "coag/lattice.hpp"
#include "coag/reference.hpp"

using namespace coag;
using lattice::LatticeState;

TEST_CASE("constructors and invariants at t = 0") {
    auto box = lattice::make_box(1.0, 5);
    CHECK(lattice::mass(box) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(box.w0 == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(box.left_constant == 0.0);
    CHECK(lattice::entropy_gap(box) == doctest::Approx(0.0).epsilon(1e-14));

    auto rie = lattice::make_riemann(2.0);
    CHECK(rie.left_constant == doctest::Approx(2.0));
    CHECK(rie.w0 == 0.0);
    CHECK(lattice::entropy_gap(rie) <= 0.0);

    auto s = lattice::from_samples(3, 0.0, {0.1, 0.3, 0.2});
    CHECK(s.j_min == 3);
    CHECK(s.j_max() == 5);
    CHECK(s.w0 == doctest::Approx(0.2).epsilon(1e-14));

    CHECK_THROWS_AS((void)lattice::make_box(-1.0), DomainError);
    CHECK_THROWS_AS((void)lattice::from_samples(0, 0.0, {-0.1}), NegativeValue);
}

TEST_CASE("mass conservation and entropy decay") {
    auto s = lattice::make_box(1.0, 5);
    lattice::integrate_to(s, 25.0, {1e-11, true, 1u << 20, 1e-14});
    CHECK(s.t == doctest::Approx(25.0));
    CHECK(lattice::mass(s) == doctest::Approx(1.0).epsilon(1e-9));
    // one-sided slope bound: max (u_{j+1} - u_j)_+ <= 1/(1/w0 + t)
    CHECK(lattice::entropy_gap(s) <= 1e-10);
    // everything stays nonnegative
    double lo = 0.0;
    for (double v : s.u) lo = std::min(lo, v);
    CHECK(lo >= -1e-12);
}

TEST_CASE("long-time profile approaches the rescaled N-wave") {
    auto s = lattice::make_box(1.0, 5);
    lattice::integrate_to(s, 100.0);
    double e100 = lattice::nwave_error(s, 1.0);
    lattice::integrate_to(s, 400.0);
    double e400 = lattice::nwave_error(s, 1.0);
    // l1 distance decays like log(t)/sqrt(t); the prefactor is O(1)
    CHECK(e400 < e100);
    CHECK(e400 < 0.3);
    // sqrt(t) max u approaches sqrt(M) = 1
    CHECK(lattice::decay_ratio(s) == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("riemann front moves at the left-state speed") {
    double speed = lattice::riemann_front_speed(1.0, 30.0, 60.0);
    CHECK(speed == doctest::Approx(1.0).epsilon(0.02));
    // scaling in c: front speed is proportional to c_left
    double speed2 = lattice::riemann_front_speed(2.0, 15.0, 30.0);
    CHECK(speed2 == doctest::Approx(2.0).epsilon(0.04));
}

TEST_CASE("riemann left plateau is exactly preserved") {
    auto s = lattice::make_riemann(1.0, 64);
    lattice::integrate_to(s, 10.0);
    // du_0/dt = c^2 - u_0^2 drives u_0 to the plateau like tanh(ct);
    // the profile behind the front decreases in j
    CHECK(s.u[0] == doctest::Approx(1.0).epsilon(1e-6));
    for (std::size_t i = 0; i + 1 < 8; ++i) CHECK(s.u[i + 1] <= s.u[i] + 1e-12);
}

TEST_CASE("window growth tracks the support") {
    auto s = lattice::make_box(4.0, 5, 0, 16);
    lattice::integrate_to(s, 200.0);
    CHECK(s.u.size() > 16); // window must have grown
    CHECK(lattice::mass(s) == doctest::Approx(4.0).epsilon(1e-9));
    // capped growth raises WindowTooSmall
    auto s2 = lattice::make_box(4.0, 5, 0, 16);
    CHECK_THROWS_AS(lattice::integrate_to(s2, 200.0, {1e-10, true, 32, 1e-14}),
                    NumericalError);
}

TEST_CASE("front position interpolation") {
    auto s = lattice::from_samples(0, 0.0, {1.0, 1.0, 0.25, 0.0});
    // crossing of 0.5 between j = 1 (u = 1) and j = 2 (u = 0.25)
    CHECK(lattice::front_position(s, 0.5) == doctest::Approx(1.0 + 0.5 / 0.75).epsilon(1e-12));
    CHECK_THROWS_AS((void)lattice::front_position(s, 2.0), FrontNotFound);
}

TEST_CASE("fiber composition") {
    auto prof = lattice::FiberMassProfile::constant(1.0);
    // active fiber at X carries mass M(frac X); support edge at 2 sqrt(t M)
    double t = 16.0;
    CHECK(lattice::fiber_compose(prof, t, 4.0) == doctest::Approx(ref::nwave(1.0, 1.0) / 4.0));
    CHECK(lattice::fiber_compose(prof, t, 8.1) == 0.0);

    auto varying = lattice::FiberMassProfile::sampled({0.5, 2.0});
    CHECK(varying(0.0) == doctest::Approx(0.5));
    CHECK(varying(0.25) == doctest::Approx(1.25)); // linear between samples
    CHECK(varying(1.0) == doctest::Approx(0.5));   // wraps
    // discontinuities sit where X crosses the active fiber's support edge,
    // generically not at integer X
    double tt = 9.0;
    auto u = [&](double x) { return lattice::fiber_compose(varying, tt, x); };
    CHECK(u(3.99) > 0.0);
    CHECK(u(4.01) > 0.0); // continuous across the integer when inside support
    CHECK(u(3.99) == doctest::Approx(u(4.01)).epsilon(0.02));

    CHECK_THROWS_AS((void)lattice::FiberMassProfile::sampled({}), DomainError);
    CHECK_THROWS_AS((void)lattice::fiber_compose(prof, -1.0, 0.0), DomainError);
}
