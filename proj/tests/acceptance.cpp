// End-to-end acceptance battery. Each criterion prints exactly one
// PASS/FAIL line; the exit status is the number of failures. The checks
// are intentionally independent of the unit tests: closed forms are
// compared against block assemblies, spectral reconstructions, weak-form
// identities, grid discretizations and integrators rather than against
// themselves.

#include "classical.hpp"
#include "dynamics.hpp"
#include "eigensystem.hpp"
#include "hequiv.hpp"
#include "metric.hpp"
#include "numerics.hpp"
#include "observables.hpp"
#include "params.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace istep;
using std::complex;

namespace {

int g_failures = 0;

void report(int idx, bool pass, const std::string& detail) {
    std::printf("criterion %d: %s (%s)\n", idx, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

void run_criterion(int idx, const std::function<std::pair<bool, std::string>()>& fn) {
    try {
        auto [pass, detail] = fn();
        report(idx, pass, detail);
    } catch (const std::exception& e) {
        report(idx, false, std::string("exception: ") + e.what());
    }
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

double sample_region(Region r, std::mt19937& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double t = u(rng);
    switch (r) {
        case Region::left_outer: return -6.0 + 4.99 * t;
        case Region::left_step: return -0.999 + 0.998 * t;
        case Region::right_step: return 0.001 + 0.998 * t;
        case Region::right_outer: return 1.01 + 4.99 * t;
    }
    return 0.0;
}

// ---------------------------------------------------------------- 1
std::pair<bool, std::string> block_decomposition() {
    std::mt19937 rng(2024);
    const Region regs[4] = {Region::left_outer, Region::left_step, Region::right_step,
                            Region::right_outer};
    double worst = 0.0;
    int count = 0;
    for (Region rx : regs)
        for (Region ry : regs)
            for (int i = 0; i < 25; ++i) {
                double x = sample_region(rx, rng);
                double y = sample_region(ry, rng);
                worst = std::max(worst,
                                 std::abs(block_kernel(rx, ry, x, y) - eta1_kernel(x, y)));
                ++count;
            }
    return {worst <= 1e-12,
            fmt("16 blocks, %d random points, worst |block - closed| = %.2e, bound 1e-12",
                count, worst)};
}

// ---------------------------------------------------------------- 2
std::pair<bool, std::string> spectral_reconstruction() {
    const double pairs[][2] = {
        {-2.0, -1.45}, {-1.6, -0.7}, {-1.8, 0.55}, {-1.35, 1.8},  {-0.45, -1.9},
        {-0.85, -0.35}, {-0.25, 0.7}, {-0.6, 1.25}, {0.7, -1.25},  {0.5, -0.85},
        {0.8, 0.1},     {0.35, 1.95}, {1.5, -1.05}, {1.3, -0.55},  {1.85, 0.5},
        {2.0, 1.5},     {-3.0, -4.0}, {2.6, 1.4},   {1.45, 0.85},  {-0.35, 0.8}};
    double worst = 0.0;
    bool all_converged = true;
    for (auto& pr : pairs) {
        auto res = eta1_spectral_oracle(pr[0], pr[1]);
        all_converged = all_converged && res.converged;
        worst = std::max(worst, std::abs(res.value - eta1_kernel(pr[0], pr[1])));
    }
    return {all_converged && worst < 1e-3,
            fmt("20 pairs, worst |spectral - closed| = %.2e, bound 1e-3, converged: %s",
                worst, all_converged ? "yes" : "no")};
}

// ---------------------------------------------------------------- 3
std::pair<bool, std::string> eigensystem_checks() {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> uk(0.2, 5.0);
    std::uniform_real_distribution<double> uz(0.01, 1.0);
    std::uniform_real_distribution<double> ux(-4.0, 4.0);
    double worst_match = 0.0, worst_ode = 0.0;
    for (int i = 0; i < 50; ++i) {
        double k = uk(rng), Z = uz(rng);
        Branch b = (i % 2) ? Branch::plus : Branch::minus;
        for (auto s : {build_psi(k, Z, b), build_phi(k, Z, b)}) {
            auto mr = matching_residuals(s);
            worst_match = std::max({worst_match, mr.worst_value_jump,
                                    mr.worst_deriv_jump / (1.0 + k)});
            for (int j = 0; j < 10; ++j)
                worst_ode = std::max(worst_ode, ode_residual(s, ux(rng)) / (1.0 + k * k));
        }
    }

    const double k = 1.3;
    std::vector<double> zs = {0.025, 0.05, 0.1, 0.2}, devs;
    auto s0 = build_psi(k, 0.0, Branch::plus);
    for (double Z : zs) {
        auto s = build_psi(k, Z, Branch::plus);
        double d = 0.0;
        for (int i = 0; i <= 240; ++i) {
            double x = -3.0 + 6.0 * i / 240.0;
            d = std::max(d, std::abs(evaluate(s, x) - evaluate(s0, x)));
        }
        devs.push_back(d);
    }
    double slope = num::loglog_slope(zs, devs);

    bool pass = worst_match < 1e-10 && worst_ode < 1e-10 && std::abs(slope - 1.0) < 0.1;
    return {pass,
            fmt("50 (k,Z) draws: worst matching jump %.2e, worst equation residual %.2e "
                "(bounds 1e-10); free-limit slope %.3f (want 1 +- 0.1)",
                worst_match, worst_ode, slope)};
}

// ---------------------------------------------------------------- 4
std::pair<bool, std::string> weak_form_identity() {
    const GaussianTF fs[][2] = {{{0.0, 0.5}, {0.0, 0.5}},
                                {{0.3, 0.4}, {-0.2, 0.6}},
                                {{0.5, 0.35}, {0.1, 0.5}},
                                {{-0.6, 0.45}, {0.4, 0.4}},
                                {{3.0, 0.15}, {3.0, 0.15}}};
    double worst = 0.0;
    for (auto& p : fs)
        worst = std::max(worst, p2q1_weak_residual(p[0], p[1], 4000));

    std::vector<double> hs, errs;
    for (int n : {1000, 2000, 4000}) {
        hs.push_back(1.0 / n);
        errs.push_back(p2q1_weak_residual(fs[0][0], fs[0][1], n));
    }
    double slope = num::loglog_slope(hs, errs);
    bool pass = worst < 1e-4 && slope >= 1.5;
    return {pass, fmt("5 test-function pairs at n=4000: worst residual %.2e (bound 1e-4); "
                      "refinement slope %.2f (want >= 1.5)",
                      worst, slope)};
}

// ---------------------------------------------------------------- 5
std::pair<bool, std::string> h2_closed_form() {
    std::mt19937 rng(321);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    double worst = 0.0;
    int inner = 0;
    auto off_edges = [](double t) {
        return std::abs(t + 1) > 1e-9 && std::abs(t) > 1e-9 && std::abs(t - 1) > 1e-9;
    };
    while (inner < 300) {
        double x = u(rng), y = u(rng);
        if (!off_edges(x) || !off_edges(y)) continue;
        worst = std::max(worst, std::abs(h2_kernel_via_blocks(x, y) - h2_kernel(x, y)));
        ++inner;
    }
    bool support_ok = true, bound_ok = true;
    for (int i = 0; i < 1000; ++i) {
        double x = u(rng), y = u(rng);
        double v = h2_kernel(x, y);
        bound_ok = bound_ok && std::abs(v) <= 0.25 + 1e-15;
        if (std::abs(x) > 1.0 && std::abs(y) > 1.0) support_ok = support_ok && (v == 0.0);
    }
    bool pass = worst <= 1e-14 && support_ok && bound_ok;
    return {pass, fmt("commutator assembly vs closed form: worst %.2e (bound 1e-14); "
                      "outside-region support exact: %s; |K| <= 1/4: %s",
                      worst, support_ok ? "yes" : "no", bound_ok ? "yes" : "no")};
}

// ---------------------------------------------------------------- 6
std::pair<bool, std::string> coefficient_table() {
    PhysicalParams pp;
    auto tab = extract_coeffs(default_coeff_grid(), pp);
    const size_t n = tab.x.size();

    double parity = 0.0;
    for (int m = 0; m < 3; ++m)
        for (size_t i = 0; i < n; ++i)
            parity = std::max(parity, std::abs(tab.a[m][i] - tab.a[m][n - 1 - i]));

    double structure = 0.0;  // even omega real, odd omega imaginary
    for (size_t i = 0; i < n; ++i)
        for (int m = 0; m < 6; ++m)
            structure = std::max(structure, (m % 2) ? std::abs(tab.omega[m][i].real())
                                                    : std::abs(tab.omega[m][i].imag()));

    double support = 0.0;
    for (size_t i = 0; i < n; ++i)
        if (std::abs(tab.x[i]) > 3.05)
            for (int m = 0; m < 3; ++m) support = std::max(support, std::abs(tab.a[m][i]));

    double amax[3] = {0.0, 0.0, 0.0};
    for (int m = 0; m < 3; ++m)
        for (size_t i = 0; i < n; ++i) amax[m] = std::max(amax[m], std::abs(tab.a[m][i]));
    bool decreasing = amax[0] > amax[1] && amax[1] > amax[2];

    bool pass = parity < 1e-8 && structure < 1e-8 && support < 1e-8 && decreasing;
    return {pass,
            fmt("801-point table: parity defect %.1e, re/im structure defect %.1e, "
                "support leak %.1e (bounds 1e-8); max|a_n| = %.3g > %.3g > %.3g: %s",
                parity, structure, support, amax[0], amax[1], amax[2],
                decreasing ? "yes" : "no")};
}

// ---------------------------------------------------------------- 7
std::pair<bool, std::string> momentum_truncation() {
    double worst = 0.0;
    int count = 0;
    for (double x0 : {-2.0, -1.0, 0.0, 1.0, 2.0})
        for (double sigma : {2.0, 3.0})
            for (double p0 : {0.0, 0.25, -0.5, 0.5}) {
                worst = std::max(worst, h2_truncation_rel_l2({x0, p0, sigma}));
                ++count;
            }
    return {worst < 0.05,
            fmt("%d Gaussian packets: worst relative L2 error of the 6-term moment form "
                "%.3f%% (bound 5%%)",
                count, 100.0 * worst)};
}

// ---------------------------------------------------------------- 8
std::pair<bool, std::string> grid_observables() {
    auto g = HalfOffsetGrid::make(6.0, 600);
    std::vector<double> zs = {0.05, 0.1, 0.2};
    std::vector<double> dx_, dp_, dg_;
    for (double Z : zs) {
        auto eta = eta_matrix(g, Z);
        dx_.push_back(hermiticity_defect(x_matrix(g, Z), eta));
        dp_.push_back(hermiticity_defect(p_matrix(g, Z), eta));
        Eigen::MatrixXcd ri = rho_inv_matrix(g, Z);
        dg_.push_back((Eigen::MatrixXcd(ri.adjoint() * eta * ri) -
                       Eigen::MatrixXcd::Identity(g.N, g.N))
                          .norm());
    }
    double sx = num::loglog_slope(zs, dx_);
    double sp = num::loglog_slope(zs, dp_);
    double sg = num::loglog_slope(zs, dg_);
    bool pass = std::abs(sx - 2.0) < 0.3 && std::abs(sp - 2.0) < 0.3 &&
                std::abs(sg - 2.0) < 0.3;
    return {pass,
            fmt("N=600 grid: Hermiticity-defect slopes in Z: X %.2f, P %.2f; "
                "metric-vs-map residual slope %.2f (want 2 +- 0.3)",
                sx, sp, sg)};
}

// ---------------------------------------------------------------- 9
std::pair<bool, std::string> evolution_norms() {
    std::vector<double> zs = {0.05, 0.1, 0.2}, dl2, deta;
    for (double Z : zs) {
        auto run = make_gaussian_run(15.0, 2048, Z, -5.0, 2.0, 1.0);
        double l0 = l2_norm(run), e0 = eta_norm(run);
        double wl = 0.0, we = 0.0;
        const double dt = 1e-3;
        for (int i = 0; i < 2500; ++i) {
            step(run, dt);
            if (i % 25 == 24) {
                wl = std::max(wl, std::abs(l2_norm(run) / l0 - 1.0));
                we = std::max(we, std::abs(eta_norm(run) / e0 - 1.0));
            }
        }
        dl2.push_back(wl);
        deta.push_back(we);
    }
    double sl = num::loglog_slope(zs, dl2);
    double se = num::loglog_slope(zs, deta);
    bool pass = std::abs(sl - 1.0) < 0.3 && std::abs(se - 2.0) < 0.3;
    return {pass,
            fmt("packet crossing the step, Z in {0.05,0.1,0.2}: plain-norm drift slope "
                "%.2f (want 1 +- 0.3), weighted-norm drift slope %.2f (want 2 +- 0.3); "
                "drifts at Z=0.2: %.1e vs %.1e",
                sl, se, dl2.back(), deta.back())};
}

// ---------------------------------------------------------------- 10
std::pair<bool, std::string> classical_checks() {
    PhysicalParams pp;
    auto H = make_hamiltonian(pp);

    IntegrateOptions copt;
    copt.t_end = 100.0;
    copt.dt = 1e-3;
    auto closed = integrate(H, {2.5, 0.02, 0.0}, copt);
    double closed_rel = closed.max_energy_drift / std::abs(closed.energy0);

    IntegrateOptions oopt;
    oopt.t_end = 6.0;
    oopt.dt = 2e-5;
    oopt.sample_stride = 1;
    auto open = integrate(H, {-5.0, 1.5, 0.0}, oopt);
    double open_rel = open.max_energy_drift / std::abs(open.energy0);

    bool const_p = true;
    for (size_t i = 1; i < open.samples.size(); ++i)
        if (std::abs(open.samples[i - 1].x) > 3.2 && std::abs(open.samples[i].x) > 3.2 &&
            open.samples[i - 1].x * open.samples[i].x > 0.0)
            const_p = const_p && (open.samples[i].p == open.samples[i - 1].p);

    IntegrateOptions ropt;
    ropt.t_end = 40.0;
    ropt.dt = 1e-3;
    auto fwd = integrate(H, {2.5, 0.02, 0.0}, ropt);
    auto back = integrate(H, {fwd.samples.back().x, -fwd.samples.back().p, 0.0}, ropt);
    double rev = std::hypot(back.samples.back().x - 2.5, back.samples.back().p + 0.02);

    bool mass_ok = effective_mass(3.0, H.coeffs) == pp.m &&
                   effective_mass(-4.2, H.coeffs) == pp.m &&
                   effective_mass(5.0, H.coeffs) == pp.m;

    bool pass = closed.cls == TrajClass::closed && open.cls == TrajClass::open &&
                closed_rel <= 1e-6 && open_rel <= 1e-6 && const_p && rev < 1e-8 && mass_ok;
    return {pass,
            fmt("trapped orbit %s (relative energy drift %.1e), passing orbit %s "
                "(%.1e, bounds 1e-6); free-flank momentum bitwise constant: %s; "
                "time-reversal return distance %.1e (bound 1e-8); effective mass exactly "
                "free outside: %s",
                traj_class_name(closed.cls), closed_rel, traj_class_name(open.cls),
                open_rel, const_p ? "yes" : "no", rev, mass_ok ? "yes" : "no")};
}

}  // namespace

int main() {
    run_criterion(1, block_decomposition);
    run_criterion(2, spectral_reconstruction);
    run_criterion(3, eigensystem_checks);
    run_criterion(4, weak_form_identity);
    run_criterion(5, h2_closed_form);
    run_criterion(6, coefficient_table);
    run_criterion(7, momentum_truncation);
    run_criterion(8, grid_observables);
    run_criterion(9, evolution_norms);
    run_criterion(10, classical_checks);
    std::printf("%d of 10 criteria passed\n", 10 - g_failures);
    return g_failures;
}
