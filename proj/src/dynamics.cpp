#include "dynamics.hpp"

#include "numerics.hpp"
#include "params.hpp"
#include "simd/simd.hpp"

#include <cmath>
#include <stdexcept>

namespace istep {

namespace {
constexpr std::complex<double> I{0.0, 1.0};
}

EvolutionRun make_gaussian_run(double B, int N, double Z, double x0, double p0,
                               double sigma) {
    if (!(B > 0.0) || N < 8) throw std::invalid_argument("make_gaussian_run: bad box");
    if (!(sigma > 0.0)) throw std::invalid_argument("make_gaussian_run: sigma must be positive");
    EvolutionRun run;
    run.B = B;
    run.N = N;
    run.Z = Z;
    run.dx = 2.0 * B / N;
    run.x.resize((std::size_t)N);
    run.psi.resize((std::size_t)N);
    for (int j = 0; j < N; ++j) {
        double x = -B + (j + 0.5) * run.dx;
        run.x[(std::size_t)j] = x;
        double d = x - x0;
        run.psi[(std::size_t)j] =
            std::exp(std::complex<double>(-d * d / (4.0 * sigma * sigma), p0 * x));
    }
    double n = l2_norm(run);
    for (auto& v : run.psi) v /= n;
    return run;
}

void step(EvolutionRun& run, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
    const int N = run.N;
    const double idx2 = 1.0 / (run.dx * run.dx);
    const std::complex<double> half = 0.5 * I * dt;
    const std::complex<double> off_a = half * (-idx2);  // off-diagonal of 1 + i dt H / 2
    const std::complex<double> off_b = -off_a;

    // rhs = (1 - i dt H / 2) psi with hard walls
    std::vector<std::complex<double>> rhs((std::size_t)N);
    for (int j = 0; j < N; ++j) {
        std::complex<double> hdiag = 2.0 * idx2 + I * run.Z * nu(run.x[(std::size_t)j]);
        std::complex<double> v = (1.0 - half * hdiag) * run.psi[(std::size_t)j];
        if (j > 0) v += off_b * run.psi[(std::size_t)(j - 1)];
        if (j < N - 1) v += off_b * run.psi[(std::size_t)(j + 1)];
        rhs[(std::size_t)j] = v;
    }

    // Thomas solve of (1 + i dt H / 2) psi' = rhs
    std::vector<std::complex<double>> cp((std::size_t)N), dp((std::size_t)N);
    auto adiag = [&](int j) {
        return 1.0 + half * (2.0 * idx2 + I * run.Z * nu(run.x[(std::size_t)j]));
    };
    cp[0] = off_a / adiag(0);
    dp[0] = rhs[0] / adiag(0);
    for (int j = 1; j < N; ++j) {
        std::complex<double> denom = adiag(j) - off_a * cp[(std::size_t)(j - 1)];
        cp[(std::size_t)j] = off_a / denom;
        dp[(std::size_t)j] = (rhs[(std::size_t)j] - off_a * dp[(std::size_t)(j - 1)]) / denom;
    }
    run.psi[(std::size_t)(N - 1)] = dp[(std::size_t)(N - 1)];
    for (int j = N - 2; j >= 0; --j)
        run.psi[(std::size_t)j] = dp[(std::size_t)j] - cp[(std::size_t)j] * run.psi[(std::size_t)(j + 1)];
    run.t += dt;
}

double l2_norm(const EvolutionRun& run) {
    double acc = 0.0;
    for (const auto& v : run.psi) acc += std::norm(v);
    return std::sqrt(acc * run.dx);
}

double eta_norm(const EvolutionRun& run) {
    const std::size_t N = run.psi.size();
    double l2 = 0.0;
    for (const auto& v : run.psi) l2 += std::norm(v);

    // <psi| i E |psi> with E the antisymmetric profile samples; the i
    // turns it into -Im of the plain bilinear form
    std::vector<double> row(N);
    std::complex<double> w = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        simd::eta1_row_im(run.x[i], run.x.data(), row.data(), N);
        w += std::conj(run.psi[i]) * simd::row_csum(row.data(), run.psi.data(), N);
    }
    double form = run.dx * l2 - run.Z * run.dx * run.dx * w.imag();
    if (form < 0.0) throw num::ConvergenceError("eta_norm: quadratic form went negative");
    return std::sqrt(form);
}

double x_expectation(const EvolutionRun& run) {
    double acc = 0.0, nrm = 0.0;
    for (std::size_t j = 0; j < run.psi.size(); ++j) {
        double w = std::norm(run.psi[j]);
        acc += run.x[j] * w;
        nrm += w;
    }
    return acc / nrm;
}

double nu_expectation(const EvolutionRun& run) {
    double acc = 0.0, nrm = 0.0;
    for (std::size_t j = 0; j < run.psi.size(); ++j) {
        double w = std::norm(run.psi[j]);
        acc += nu(run.x[j]) * w;
        nrm += w;
    }
    return acc / nrm;
}

}  // namespace istep
