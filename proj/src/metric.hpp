#pragma once

#include <complex>
#include <functional>

// First-order metric kernel for the imaginary step model. The O(Z) part
// of the positive metric has the closed form
//     <x|eta1|y> = i * g(x+y) * sgn(x-y),
// with g the piecewise-linear profile below. The same object is assembled
// region-by-region from sixteen block formulas (one per pair of the four
// step regions), and independently from a spectral integral over the
// adjoint-operator eigenfunctions; both are exposed for cross-checks.

namespace istep {

// sign with sgn(0) = 0
double sgn(double v);

// g(s) = (4 + 2|s| - |s+2| - |s-2|)/8; equals |s|/4 for |s|<=2 and 1/2 outside
double g_profile(double s);
// derivative (away from the kinks): (2 sgn(s) - sgn(s+2) - sgn(s-2))/8
double g_profile_deriv(double s);

// unified closed form of the O(Z) metric coefficient
std::complex<double> eta1_kernel(double x, double y);

// generator of the similarity transform: Q1 = -eta1
std::complex<double> q1_kernel(double x, double y);

// the four regions cut by the step edges
enum class Region { left_outer, left_step, right_step, right_outer };
Region region_of(double x);  // x exactly on an edge counts toward the right piece

// O(Z) block formula for x in region rx and y in region ry; throws
// std::domain_error when (x,y) is not in the named block
std::complex<double> block_kernel(Region rx, Region ry, double x, double y);

// A kernel split into a multiple of delta(x-y) plus a regular part, tagged
// with its order in Z. delta_coeff is the constant coefficient of the
// delta; position-dependent delta factors are handled by the callers.
struct Kernel {
    double delta_coeff = 0.0;
    std::function<std::complex<double>(double, double)> regular;
    int order_in_Z = 0;
};

Kernel eta1_as_kernel();  // order 1, no delta part
Kernel q1_as_kernel();

// Independent reconstruction of eta1(x,y) from the spectral integral
//     d/dZ at Z=0 of  integral over k of  sum over both branches of
//     phibar_k(y)* phibar_k(x)
// evaluated with a central difference in Z, exponential damping exp(-eps*k)
// on a truncated k-range, and polynomial extrapolation of the damping
// parameter to zero.
struct SpectralResult {
    std::complex<double> value;
    double spread;    // size of the last extrapolation refinement
    bool converged;   // spread below the reported tolerance
    double tol;
};
SpectralResult eta1_spectral_oracle(double x, double y, double dZ = 1e-4,
                                    double kmax = 400.0, double tol = 1e-3);

}  // namespace istep
