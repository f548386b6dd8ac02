#include "params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace istep {

void PhysicalParams::validate() const {
    auto bad = [](const std::string& what) {
        throw std::invalid_argument("invalid parameters: " + what);
    };
    if (!(m > 0.0) || !std::isfinite(m)) bad("m must be positive and finite");
    if (!(hbar > 0.0) || !std::isfinite(hbar)) bad("hbar must be positive and finite");
    if (!(L > 0.0) || !std::isfinite(L)) bad("L must be positive and finite");
    if (!std::isfinite(zeta)) bad("zeta must be finite");
}

double theta(double x) {
    if (x > 0.0) return 1.0;
    if (x < 0.0) return 0.0;
    return 0.5;
}

double nu(double x) {
    return theta(x + 1.0) + theta(x - 1.0) - 2.0 * theta(x);
}

std::complex<double> potential(double x, double Z) {
    return {0.0, Z * nu(x)};
}

ScaledParams scale(const PhysicalParams& p) {
    p.validate();
    return {p.m * p.L * p.L * p.zeta / (2.0 * p.hbar * p.hbar)};
}

double zeta_from_Z(double Z, const PhysicalParams& p) {
    return 2.0 * p.hbar * p.hbar * Z / (p.m * p.L * p.L);
}

double x_to_dimless(double x, const PhysicalParams& p) { return 2.0 * x / p.L; }
double x_from_dimless(double xp, const PhysicalParams& p) { return 0.5 * p.L * xp; }

double p_to_dimless(double mom, const PhysicalParams& p) { return p.L * mom / (2.0 * p.hbar); }
double p_from_dimless(double pp, const PhysicalParams& p) { return 2.0 * p.hbar * pp / p.L; }

double energy_to_dimless(double E, const PhysicalParams& p) {
    return p.m * p.L * p.L * E / (2.0 * p.hbar * p.hbar);
}
double energy_from_dimless(double Ep, const PhysicalParams& p) {
    return 2.0 * p.hbar * p.hbar * Ep / (p.m * p.L * p.L);
}

double kernel_jacobian(const PhysicalParams& p) { return 2.0 / p.L; }

}  // namespace istep
