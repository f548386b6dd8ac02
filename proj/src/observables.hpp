#pragma once

#include "params.hpp"

#include <Eigen/Dense>
#include <complex>
#include <vector>

// Pseudo-Hermitian position and momentum observables to first order in Z,
// localized states, and the uniform-grid discretizations used by the
// Hermiticity and localization checks. An operator o of the Hermitian
// reference problem maps to O = o - (Z/2)[o, Q1] + O(Z^2) with
// Q1 = -eta1; for o = x and o = p the commutators collapse to the closed
// forms below.

namespace istep {

// O(Z) coefficient kernels in dimensionless variables
std::complex<double> x_kernel(double x, double y);  // (i/2) g(x+y) |x-y|
double p_kernel(double x, double y);                // g'(x+y) sgn(x-y), real

// the same kernels in physical units (x, y physical coordinates)
std::complex<double> x_kernel_physical(double x, double y, const PhysicalParams& p);
double p_kernel_physical(double x, double y, const PhysicalParams& p);

// localized state at center y: <x|xi^(y)> = delta(x-y) + regular(x)
struct LocalizedState {
    double center = 0.0;
    double Z = 0.0;
    std::complex<double> regular(double x) const;  // -(Z/2) eta1(x, center)
};
LocalizedState localized_state(double center, double Z);
std::complex<double> localized_regular_physical(double x, double center,
                                                const PhysicalParams& p);

// uniform grid with nodes at cell midpoints (never on the step edges)
struct HalfOffsetGrid {
    double B = 0.0;   // box [-B, B]
    int N = 0;
    double dx = 0.0;
    std::vector<double> x;
    static HalfOffsetGrid make(double B, int N);
};

// sampled kernel matrices; quadrature weight dx included where a kernel is
// applied, so all matrices act directly on node-value vectors
Eigen::MatrixXd eta1_samples(const HalfOffsetGrid& g);               // E_ij = Im eta1(x_i, x_j)
Eigen::MatrixXcd eta_matrix(const HalfOffsetGrid& g, double Z);      // I + i Z dx E
Eigen::MatrixXcd pfree_matrix(const HalfOffsetGrid& g);              // periodic central difference
Eigen::MatrixXcd x_matrix(const HalfOffsetGrid& g, double Z);        // diag(x) + Z dx K_X
Eigen::MatrixXcd p_matrix(const HalfOffsetGrid& g, double Z);        // pfree - (Z/2)[pfree, Q1]
Eigen::MatrixXcd rho_inv_matrix(const HalfOffsetGrid& g, double Z);  // 1 - (Z/2) i dx E

// generic first-order dressing: base - (Z/2)[base, Q1] on the grid
Eigen::MatrixXcd observable_transform(const Eigen::MatrixXcd& base,
                                      const HalfOffsetGrid& g, double Z);

// Frobenius norm of (eta O - O^dagger eta); zero for an eta-pseudo-
// Hermitian operator
double hermiticity_defect(const Eigen::MatrixXcd& O, const Eigen::MatrixXcd& eta);

// physical density of a state: |(rho psi)(x)|^2 normalized to unit
// integral, rho = 1 + (Z/2) eta1 to first order
std::vector<double> physical_density(const std::vector<std::complex<double>>& psi,
                                     const HalfOffsetGrid& g, double Z);

}  // namespace istep
