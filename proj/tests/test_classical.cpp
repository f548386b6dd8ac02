#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "classical.hpp"
#include "params.hpp"

#include <cmath>

using namespace istep;

namespace {
const PhysicalParams pp{};  // m=1/2, L=2, so physical and dimensionless x agree
}

TEST_CASE("hamiltonian validates the truncation order") {
    CHECK_THROWS_AS(make_hamiltonian(pp, 3), std::invalid_argument);
    CHECK_THROWS_AS(make_hamiltonian(pp, -1), std::invalid_argument);
}

TEST_CASE("energy is purely kinetic outside the interaction region") {
    auto H = make_hamiltonian(pp);
    CHECK(H.energy(4.0, 1.7) == 1.7 * 1.7);  // p^2/2m with m = 1/2
    CHECK(H.dHdx(4.0, 1.7) == 0.0);
    CHECK(H.dHdp(4.0, 1.7) == doctest::Approx(2.0 * 1.7));
    // inside, the well bottoms out around |x| = 2.5 at w < 0
    CHECK(H.energy(2.5, 0.0) < 0.0);
    CHECK(H.energy(2.5, 0.0) == doctest::Approx(-(1.0 / 64.0) / 9.0).epsilon(1e-2));
}

TEST_CASE("free motion is exact") {
    auto H = make_hamiltonian(pp);
    IntegrateOptions opt;
    opt.t_end = 10.0;
    opt.dt = 1e-3;
    auto tr = integrate(H, {8.0, 1.0, 0.0}, opt);
    CHECK(tr.cls == TrajClass::open);
    for (auto& s : tr.samples) CHECK(s.p == 1.0);  // never touched the region
    auto& last = tr.samples.back();
    CHECK(last.t == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(last.x == doctest::Approx(8.0 + 2.0 * 10.0).epsilon(1e-10));
    CHECK(tr.max_energy_drift == 0.0);
}

TEST_CASE("well orbit is closed and conserves the spline energy") {
    auto H = make_hamiltonian(pp);
    IntegrateOptions opt;
    opt.t_end = 100.0;
    opt.dt = 1e-3;
    auto tr = integrate(H, {2.5, 0.02, 0.0}, opt);
    CHECK(tr.cls == TrajClass::closed);
    CHECK(tr.energy0 < 0.0);  // trapped below the escape energy
    CHECK(tr.max_energy_drift < 1e-8);
    double worst_x = 0.0;
    for (auto& s : tr.samples) worst_x = std::max(worst_x, std::abs(s.x));
    CHECK(worst_x < 3.0);
}

TEST_CASE("too short a run stays undetermined") {
    auto H = make_hamiltonian(pp);
    IntegrateOptions opt;
    opt.t_end = 1.0;
    opt.dt = 1e-3;
    auto tr = integrate(H, {2.5, 0.02, 0.0}, opt);
    CHECK(tr.cls == TrajClass::undetermined);
}

TEST_CASE("implicit midpoint is time reversible") {
    auto H = make_hamiltonian(pp);
    IntegrateOptions opt;
    opt.t_end = 40.0;
    opt.dt = 1e-3;
    auto fwd = integrate(H, {2.5, 0.02, 0.0}, opt);
    auto end = fwd.samples.back();
    auto bwd = integrate(H, {end.x, -end.p, 0.0}, opt);
    auto home = bwd.samples.back();
    CHECK(std::abs(home.x - 2.5) < 1e-8);
    CHECK(std::abs(home.p + 0.02) < 1e-8);
}

TEST_CASE("separable truncation integrates with the explicit scheme") {
    auto H0 = make_hamiltonian(pp, 0);
    IntegrateOptions opt;
    opt.t_end = 100.0;
    opt.dt = 1e-3;
    auto tr = integrate(H0, {2.5, 0.02, 0.0}, opt);
    CHECK(tr.cls == TrajClass::closed);
    CHECK(tr.max_energy_drift < 1e-8);
}

TEST_CASE("momentum is bitwise constant outside the region") {
    auto H = make_hamiltonian(pp);
    IntegrateOptions opt;
    opt.t_end = 6.0;
    opt.dt = 2e-4;
    opt.sample_stride = 1;
    auto tr = integrate(H, {-5.0, 1.5, 0.0}, opt);
    CHECK(tr.cls == TrajClass::open);
    int outside_pairs = 0;
    for (size_t i = 1; i < tr.samples.size(); ++i) {
        if (std::abs(tr.samples[i - 1].x) > 3.2 && std::abs(tr.samples[i].x) > 3.2 &&
            tr.samples[i - 1].x * tr.samples[i].x > 0.0) {
            CHECK(tr.samples[i].p == tr.samples[i - 1].p);
            ++outside_pairs;
        }
    }
    CHECK(outside_pairs > 100);  // the run really spends time on both flanks
}

TEST_CASE("portrait seeds cover trapped and passing orbits") {
    auto inits = default_portrait_inits(pp);
    CHECK(inits.size() >= 10);
    auto H = make_hamiltonian(pp);
    IntegrateOptions opt;
    opt.t_end = 5.0;
    opt.dt = 1e-3;
    opt.sample_stride = 50;
    auto trajs = phase_portrait(H, inits, opt);
    REQUIRE(trajs.size() == inits.size());
    for (auto& tr : trajs) {
        CHECK(!tr.samples.empty());
        CHECK(std::isfinite(tr.max_energy_drift));
    }
}
