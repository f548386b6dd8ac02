#pragma once

#include "params.hpp"

#include <array>
#include <complex>
#include <memory>
#include <vector>

// Second-order piece of the equivalent Hermitian Hamiltonian
// h = p^2 + h2 Z^2 + O(Z^3) and the pseudo-differential coefficients read
// off from its momentum representation. The O(Z) piece vanishes
// identically (h1 = i nu + [p^2, Q1]/2 = 0), which is checked in weak
// form; h2 = (i/4)[eta1, nu] has the real closed-form kernel below, with
// constant tails in y whose Fourier transform contributes a pure 1/p pole.

namespace istep {

// closed form: g(x+y) sgn(x-y) (nu(x) - nu(y)) / 4
double h2_kernel(double x, double y);
// same object assembled from the commutator with the block-built metric
// kernel; independent algebra used for cross-checks
double h2_kernel_via_blocks(double x, double y);

// tail constants of K(x, .): K -> tail_plus(x) as y -> +inf, tail_minus as
// y -> -inf
double h2_tail_plus(double x);   // -nu(x)/8
double h2_tail_minus(double x);  // +nu(x)/8

// breakpoints of y -> K(x,y): kinks/jumps at {-2-x, -x, 2-x, x, -1, 0, 1}
std::vector<double> h2_breakpoints(double x);

// exact moments M_n = integral of K_reg(x,y) y^n dy, n = 0..5, where
// K_reg removes the constant tails on each half line
std::array<double, 6> h2_reg_moments(double x);

// omega_n = i^n M_n / n!; even n real, odd n imaginary
std::array<std::complex<double>, 6> omega_coeffs(double x);

// residue of the 1/p pole of sqrt(2 pi) <x|h2|p>: -i nu(x) / 4
std::complex<double> h2_pole_residue(double x);

// momentum representation. eps = 0 evaluates the compactly supported part
// exactly (piecewise-linear Fourier transform); eps > 0 evaluates it by
// damped quadrature instead, for cross-checking.
struct MomentumRepr {
    std::complex<double> regular;       // sqrt(2 pi) <x|h2|p> minus the pole
    std::complex<double> pole_residue;  // coefficient of 1/p
};
MomentumRepr h2_momentum_repr(double x, double p, double eps = 0.0);

// weak-form identity checks with real Gaussian test functions
struct GaussianTF {
    double x0 = 0.0;
    double sigma = 1.0;
};
// | <f|[p^2,Q1]|g> + 2i <f|nu g> | at midpoint resolution n, normalized by
// ||f|| ||g||
double p2q1_weak_residual(const GaussianTF& f, const GaussianTF& g, int n);
// same for h1 = i nu + [p^2, Q1]/2
double h1_weak_residual(const GaussianTF& f, const GaussianTF& g, int n);

// coefficient table on a grid: omega_n, a_n = omega_{2n} + i omega'_{2n+1}
// (centered differences on the grid, one-sided at the ends), and the
// physical alpha_n = 2 m (L/2 hbar)^{2(n+1)} a_n
struct CoeffTable {
    std::vector<double> x;  // dimensionless grid
    std::array<std::vector<std::complex<double>>, 6> omega;
    std::array<std::vector<double>, 3> a;
    std::array<std::vector<double>, 3> alpha;
    std::vector<double> pole_residue_im;  // Im of h2_pole_residue per point
    std::vector<int> fd_artifact;  // 1 where the difference stencil straddles a jump
    PhysicalParams params;
};
std::vector<double> default_coeff_grid();  // 801 points on [-4, 4]
CoeffTable extract_coeffs(const std::vector<double>& grid, const PhysicalParams& p,
                          int n_max = 5);

// smooth samplers used by the classical module: a_n and alpha_n at an
// arbitrary dimensionless point (centered difference with a small internal
// step; callers should stay off the jump points)
std::array<double, 3> a_coeffs_at(double x);
double alpha_coeff_at(int n, double x, const PhysicalParams& p);

// clamped spline interpolants of alpha_n on the physical interaction
// region (-3L/2, 3L/2), exactly zero outside
class CoeffSplines {
  public:
    CoeffSplines(CoeffSplines&&) noexcept;
    CoeffSplines& operator=(CoeffSplines&&) noexcept;
    ~CoeffSplines();
    double alpha(int n, double x_phys) const;
    double alpha_deriv(int n, double x_phys) const;
    const PhysicalParams& params() const;

  private:
    friend CoeffSplines build_coeff_splines(const PhysicalParams&, int);
    CoeffSplines();
    struct Impl;
    std::unique_ptr<Impl> impl_;
};
CoeffSplines build_coeff_splines(const PhysicalParams& p, int samples_per_piece = 64);

// m_eff = m / (1 + 2 m zeta^2 alpha_1); exactly m outside the interaction
// region. Throws std::domain_error if the denominator is not positive.
double effective_mass(double x_phys, const CoeffSplines& cs);
// w = zeta^2 alpha_0
double w_potential(double x_phys, const CoeffSplines& cs);

// truncation quality of the pseudo-differential expansion: apply h2 to a
// Gaussian packet exactly (kernel quadrature) and through the n <= 5
// moment form plus tail term, and compare in relative L^2 over the
// interaction region
struct GaussPacket {
    double x0 = 0.0;
    double p0 = 0.0;
    double sigma = 1.0;
};
std::complex<double> h2_action_quadrature(double x, const GaussPacket& pk);
std::complex<double> h2_action_truncated(double x, const GaussPacket& pk);
double h2_truncation_rel_l2(const GaussPacket& pk);

}  // namespace istep
