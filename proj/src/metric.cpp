#include "metric.hpp"

#include "eigensystem.hpp"
#include "numerics.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace istep {

namespace {
constexpr std::complex<double> I{0.0, 1.0};
}

double sgn(double v) { return (v > 0.0) ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

double g_profile(double s) {
    return 0.125 * (4.0 + 2.0 * std::fabs(s) - std::fabs(s + 2.0) - std::fabs(s - 2.0));
}

double g_profile_deriv(double s) {
    return 0.125 * (2.0 * sgn(s) - sgn(s + 2.0) - sgn(s - 2.0));
}

std::complex<double> eta1_kernel(double x, double y) {
    return I * g_profile(x + y) * sgn(x - y);
}

std::complex<double> q1_kernel(double x, double y) { return -eta1_kernel(x, y); }

Region region_of(double x) {
    if (x < -1.0) return Region::left_outer;
    if (x < 0.0) return Region::left_step;
    if (x < 1.0) return Region::right_step;
    return Region::right_outer;
}

std::complex<double> block_kernel(Region rx, Region ry, double x, double y) {
    if (region_of(x) != rx || region_of(y) != ry)
        throw std::domain_error("block_kernel: point is not inside the requested block");

    const double s = x + y;
    using R = Region;
    // block-by-block reductions of the metric integral; diagonal blocks
    // additionally carry the order-Z^0 delta term, which is not part of
    // the O(Z) coefficient returned here
    if (rx == R::left_outer && ry == R::left_outer) return 0.5 * I * sgn(x - y);
    if (rx == R::right_outer && ry == R::right_outer) return 0.5 * I * sgn(x - y);
    if ((rx == R::left_step || rx == R::right_step) && ry == R::left_outer)
        return 0.125 * I * (2.0 - s - std::fabs(s + 2.0));
    if (rx == R::right_outer && ry == R::left_outer)
        return 0.125 * I * (4.0 + 2.0 * std::fabs(s) - std::fabs(s + 2.0) - std::fabs(s - 2.0));
    if (rx == R::left_outer && (ry == R::left_step || ry == R::right_step))
        return -0.125 * I * (2.0 - s - std::fabs(s + 2.0));
    if (rx == R::left_step && ry == R::left_step) return -0.25 * I * sgn(x - y) * s;
    if (rx == R::right_step && ry == R::left_step) return 0.25 * I * std::fabs(s);
    if (rx == R::right_outer && (ry == R::left_step || ry == R::right_step))
        return 0.125 * I * (2.0 + s - std::fabs(s - 2.0));
    if (rx == R::left_step && ry == R::right_step) return -0.25 * I * std::fabs(s);
    if (rx == R::right_step && ry == R::right_step) return 0.25 * I * sgn(x - y) * s;
    if (rx == R::left_outer && ry == R::right_outer)
        return -0.125 * I * (4.0 + 2.0 * std::fabs(s) - std::fabs(s + 2.0) - std::fabs(s - 2.0));
    // remaining blocks: x in a step region, y in the right outer region
    return -0.125 * I * (2.0 + s - std::fabs(s - 2.0));
}

Kernel eta1_as_kernel() {
    return {0.0, [](double x, double y) { return eta1_kernel(x, y); }, 1};
}

Kernel q1_as_kernel() {
    return {0.0, [](double x, double y) { return q1_kernel(x, y); }, 1};
}

SpectralResult eta1_spectral_oracle(double x, double y, double dZ, double kmax, double tol) {
    if (!(dZ > 0.0) || !(kmax > 1.0))
        throw std::invalid_argument("eta1_spectral_oracle: bad dZ or kmax");

    // central difference in Z of the completeness integrand, then damped
    // k-integration on a fixed panel rule
    auto knodes = num::panel_nodes(1e-9, kmax, {}, 0.25, 8);
    std::vector<std::complex<double>> deriv(knodes.size());
    num::parallel_for(knodes.size(), [&](std::size_t i) {
        double k = knodes[i].first;
        std::complex<double> sum[2] = {0.0, 0.0};
        int side = 0;
        for (double Zs : {dZ, -dZ}) {
            for (Branch b : {Branch::plus, Branch::minus}) {
                EigenSolution phi = build_phi(k, Zs, b);
                sum[side] += std::conj(evaluate(phi, y)) * evaluate(phi, x);
            }
            ++side;
        }
        deriv[i] = (sum[0] - sum[1]) / (2.0 * dZ);
    });

    const std::vector<double> eps = {0.2, 0.1, 0.05, 0.025};
    std::vector<std::complex<double>> vals;
    vals.reserve(eps.size());
    for (double e : eps) {
        std::complex<double> acc = 0.0;
        for (std::size_t i = 0; i < knodes.size(); ++i)
            acc += knodes[i].second * std::exp(-e * knodes[i].first) * deriv[i];
        vals.push_back(acc);
    }
    auto ex = num::neville_at_zero(eps, vals);

    SpectralResult r;
    r.value = ex.value;
    r.spread = ex.spread;
    r.tol = tol;
    r.converged = ex.spread < tol;
    return r;
}

}  // namespace istep
