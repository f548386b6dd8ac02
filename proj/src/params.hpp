#pragma once

#include <complex>

// Physical parameters of the imaginary step model and the maps between
// physical and dimensionless quantities. Dimensionless convention:
// length unit L/2, so the step edges sit at x' = -1, 0, 1 and the
// coupling collapses into the single number Z.

namespace istep {

struct PhysicalParams {
    double m = 0.5;
    double hbar = 1.0;
    double L = 2.0;
    double zeta = 1.0 / 3.0;

    // throws std::invalid_argument when a value is out of range
    void validate() const;
};

struct ScaledParams {
    double Z = 0.0;
};

// unit step with theta(0) = 1/2
double theta(double x);

// step profile: +1 on (-1,0), -1 on (0,1), 0 outside, half values at the edges
double nu(double x);

// dimensionless potential i*Z*nu(x)
std::complex<double> potential(double x, double Z);

// Z = m L^2 zeta / (2 hbar^2)
ScaledParams scale(const PhysicalParams& p);
double zeta_from_Z(double Z, const PhysicalParams& p);

// coordinate, momentum and energy maps (primed = dimensionless)
double x_to_dimless(double x, const PhysicalParams& p);    // x' = 2x/L
double x_from_dimless(double xp, const PhysicalParams& p);
double p_to_dimless(double mom, const PhysicalParams& p);  // p' = L p / (2 hbar)
double p_from_dimless(double pp, const PhysicalParams& p);
double energy_to_dimless(double E, const PhysicalParams& p);  // E' = m L^2 E / (2 hbar^2)
double energy_from_dimless(double Ep, const PhysicalParams& p);

// Jacobian that converts a delta-normalized kernel in dimensionless
// variables to physical ones: K(x,y) = (2/L) K'(x', y')
double kernel_jacobian(const PhysicalParams& p);

}  // namespace istep
