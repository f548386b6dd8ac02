#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynamics.hpp"
#include "params.hpp"

#include <cmath>
#include <complex>
#include <vector>

using namespace istep;
using std::complex;

TEST_CASE("initial packet is normalized on a half-offset grid") {
    auto run = make_gaussian_run(15.0, 1024, 0.1, -5.0, 2.0, 1.0);
    CHECK(run.dx == doctest::Approx(30.0 / 1024));
    CHECK(run.x.front() == doctest::Approx(-15.0 + run.dx / 2));
    CHECK(l2_norm(run) == doctest::Approx(1.0).epsilon(1e-12));
    // the packet decays to nothing at the walls (10 sigma out, ~e^-25)
    CHECK(std::abs(run.psi.front()) < 1e-10);
    CHECK(std::abs(run.psi.back()) < 1e-10);
}

TEST_CASE("eta norm reduces to the plain norm at Z = 0") {
    auto run = make_gaussian_run(15.0, 512, 0.0, -5.0, 2.0, 1.0);
    CHECK(eta_norm(run) == l2_norm(run));
}

TEST_CASE("Hermitian limit conserves the norm to roundoff") {
    auto run = make_gaussian_run(15.0, 1024, 0.0, -5.0, 2.0, 1.0);
    for (int i = 0; i < 200; ++i) step(run, 1e-3);
    CHECK(std::abs(l2_norm(run) - 1.0) < 1e-12);
    CHECK(run.t == doctest::Approx(0.2));
}

TEST_CASE("packet moves at its group velocity") {
    auto run = make_gaussian_run(15.0, 1024, 0.0, -5.0, 2.0, 1.0);
    double x0 = x_expectation(run);
    for (int i = 0; i < 300; ++i) step(run, 1e-3);
    double dxm = x_expectation(run) - x0;  // dE/dp = 2 p0 = 4, times t = 0.3
    CHECK(dxm > 1.0);
    CHECK(dxm < 1.4);
}

TEST_CASE("norm growth rate matches the step expectation value") {
    auto run = make_gaussian_run(15.0, 2048, 0.1, -3.0, 2.0, 1.0);
    const double dt = 5e-4;
    // march the packet onto the step region first
    for (int i = 0; i < 1000; ++i) step(run, dt);
    double n_before = l2_norm(run);
    double nu_mid, n_mid;
    {
        step(run, dt);
        n_mid = l2_norm(run);
        nu_mid = nu_expectation(run);
    }
    step(run, dt);
    double n_after = l2_norm(run);
    double fd = (n_after * n_after - n_before * n_before) / (2.0 * dt);
    double predicted = 2.0 * run.Z * nu_mid * n_mid * n_mid;
    CHECK(fd == doctest::Approx(predicted).epsilon(1e-3));
}

TEST_CASE("eta-weighted norm drifts much less than the plain norm") {
    auto run = make_gaussian_run(15.0, 1024, 0.1, -5.0, 2.0, 1.0);
    double e0 = eta_norm(run), l0 = l2_norm(run);
    double worst_eta = 0.0, worst_l2 = 0.0;
    for (int i = 0; i < 2500; ++i) {
        step(run, 1e-3);
        if (i % 100 == 99) {
            worst_eta = std::max(worst_eta, std::abs(eta_norm(run) / e0 - 1.0));
            worst_l2 = std::max(worst_l2, std::abs(l2_norm(run) / l0 - 1.0));
        }
    }
    CHECK(worst_l2 > 1e-3);           // the plain norm visibly drifts at O(Z)
    CHECK(worst_eta < 0.5 * worst_l2);  // the weighted one is an order down
}

TEST_CASE("evolve, conjugate-mirror, evolve returns the mirrored start") {
    // the antiunitary x -> -x plus conjugation inverts the propagator, and
    // the discretization preserves that exactly on a symmetric grid
    const int N = 1024;
    auto run = make_gaussian_run(15.0, N, 0.15, -4.0, 1.5, 1.0);
    std::vector<complex<double>> start = run.psi;
    const int steps = 400;
    for (int i = 0; i < steps; ++i) step(run, 1e-3);
    std::vector<complex<double>> mirrored(N);
    for (int j = 0; j < N; ++j) mirrored[j] = std::conj(run.psi[N - 1 - j]);
    run.psi = mirrored;
    for (int i = 0; i < steps; ++i) step(run, 1e-3);
    double worst = 0.0;
    for (int j = 0; j < N; ++j)
        worst = std::max(worst, std::abs(run.psi[j] - std::conj(start[N - 1 - j])));
    CHECK(worst < 1e-10);
}
