#include "observables.hpp"

#include "metric.hpp"
#include "numerics.hpp"
#include "simd/simd.hpp"

#include <cmath>
#include <stdexcept>

namespace istep {

namespace {
constexpr std::complex<double> I{0.0, 1.0};
}

std::complex<double> x_kernel(double x, double y) {
    return 0.5 * I * g_profile(x + y) * std::fabs(x - y);
}

double p_kernel(double x, double y) { return g_profile_deriv(x + y) * sgn(x - y); }

std::complex<double> x_kernel_physical(double x, double y, const PhysicalParams& p) {
    double s = x + y, L = p.L;
    double prof = 2.0 * L + 2.0 * std::fabs(s) - std::fabs(s + L) - std::fabs(s - L);
    return I * p.m * p.zeta / (8.0 * p.hbar * p.hbar) * prof * std::fabs(x - y);
}

double p_kernel_physical(double x, double y, const PhysicalParams& p) {
    double s = x + y, L = p.L;
    double prof = 2.0 * sgn(s) - sgn(s + L) - sgn(s - L);
    return p.m * p.zeta / (4.0 * p.hbar) * prof * sgn(x - y);
}

std::complex<double> LocalizedState::regular(double x) const {
    return -0.5 * Z * eta1_kernel(x, center);
}

LocalizedState localized_state(double center, double Z) { return {center, Z}; }

std::complex<double> localized_regular_physical(double x, double center,
                                                const PhysicalParams& p) {
    double s = x + center, L = p.L;
    double prof = 2.0 * L + 2.0 * std::fabs(s) - std::fabs(s + L) - std::fabs(s - L);
    return -I * p.m * p.zeta / (8.0 * p.hbar * p.hbar) * prof * sgn(x - center);
}

HalfOffsetGrid HalfOffsetGrid::make(double B, int N) {
    if (!(B > 0.0) || N < 2) throw std::invalid_argument("HalfOffsetGrid: bad box");
    HalfOffsetGrid g;
    g.B = B;
    g.N = N;
    g.dx = 2.0 * B / N;
    g.x.resize((std::size_t)N);
    for (int i = 0; i < N; ++i) g.x[(std::size_t)i] = -B + (i + 0.5) * g.dx;
    return g;
}

Eigen::MatrixXd eta1_samples(const HalfOffsetGrid& g) {
    const int N = g.N;
    Eigen::MatrixXd E(N, N);
    num::parallel_for((std::size_t)N, [&](std::size_t i) {
        // row-major fill through the batch kernel; Eigen default is
        // column-major so go through a temporary row
        std::vector<double> row((std::size_t)N);
        simd::eta1_row_im(g.x[i], g.x.data(), row.data(), (std::size_t)N);
        for (int j = 0; j < N; ++j) E((Eigen::Index)i, j) = row[(std::size_t)j];
    });
    return E;
}

Eigen::MatrixXcd eta_matrix(const HalfOffsetGrid& g, double Z) {
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(g.N, g.N);
    M += I * Z * g.dx * eta1_samples(g);
    return M;
}

Eigen::MatrixXcd pfree_matrix(const HalfOffsetGrid& g) {
    const int N = g.N;
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(N, N);
    const std::complex<double> c = -I / (2.0 * g.dx);
    for (int i = 0; i < N; ++i) {
        P(i, (i + 1) % N) = c;
        P(i, (i + N - 1) % N) = -c;
    }
    return P;
}

Eigen::MatrixXcd x_matrix(const HalfOffsetGrid& g, double Z) {
    const int N = g.N;
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(N, N);
    for (int i = 0; i < N; ++i) M(i, i) = g.x[(std::size_t)i];
    num::parallel_for((std::size_t)N, [&](std::size_t i) {
        std::vector<double> row((std::size_t)N);
        simd::x_row_im(g.x[i], g.x.data(), row.data(), (std::size_t)N);
        for (int j = 0; j < N; ++j)
            M((Eigen::Index)i, j) += I * Z * g.dx * row[(std::size_t)j];
    });
    return M;
}

Eigen::MatrixXcd observable_transform(const Eigen::MatrixXcd& base,
                                      const HalfOffsetGrid& g, double Z) {
    // Q1 on the grid is -dx * (i E); dressing adds (Z dx / 2) [base, iE]
    Eigen::MatrixXcd Q1 = -I * g.dx * eta1_samples(g);
    return base - 0.5 * Z * (base * Q1 - Q1 * base);
}

Eigen::MatrixXcd p_matrix(const HalfOffsetGrid& g, double Z) {
    return observable_transform(pfree_matrix(g), g, Z);
}

Eigen::MatrixXcd rho_inv_matrix(const HalfOffsetGrid& g, double Z) {
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(g.N, g.N);
    M -= 0.5 * I * Z * g.dx * eta1_samples(g);
    return M;
}

double hermiticity_defect(const Eigen::MatrixXcd& O, const Eigen::MatrixXcd& eta) {
    return (eta * O - O.adjoint() * eta).norm();
}

std::vector<double> physical_density(const std::vector<std::complex<double>>& psi,
                                     const HalfOffsetGrid& g, double Z) {
    if ((int)psi.size() != g.N) throw std::invalid_argument("physical_density: size mismatch");
    std::vector<double> rho((std::size_t)g.N);
    std::vector<double> row((std::size_t)g.N);
    double total = 0.0;
    for (int i = 0; i < g.N; ++i) {
        simd::eta1_row_im(g.x[(std::size_t)i], g.x.data(), row.data(), (std::size_t)g.N);
        std::complex<double> corr = simd::row_csum(row.data(), psi.data(), (std::size_t)g.N);
        std::complex<double> v = psi[(std::size_t)i] + 0.5 * Z * g.dx * I * corr;
        rho[(std::size_t)i] = std::norm(v);
        total += rho[(std::size_t)i];
    }
    total *= g.dx;
    if (!(total > 0.0)) throw std::invalid_argument("physical_density: state has zero norm");
    for (double& v : rho) v /= total;
    return rho;
}

}  // namespace istep
