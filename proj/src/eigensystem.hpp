#pragma once

#include <complex>

// Scattering eigenfunctions of the imaginary step Hamiltonian
// H = p^2 + i Z nu(x) and of its adjoint, at real energy k^2 > 0. Each
// solution is a doubly degenerate pair (branch +/-) of piecewise plane
// waves on the four step regions, glued C^1 at x = -1, 0, 1.

namespace istep {

enum class Branch { plus, minus };
enum class OperatorTag { H, Hdagger };

struct EigenSolution {
    double k = 0.0;       // asymptotic wavenumber, k > 0
    double Z = 0.0;       // coupling as passed in
    double Zeff = 0.0;    // signed coupling entering the formulas (-Z for the adjoint)
    OperatorTag tag = OperatorTag::H;
    Branch branch = Branch::plus;

    // interior wavenumbers, principal square roots of k^2 +/- i Zeff
    std::complex<double> kplus, kminus;

    // plane-wave coefficients per region: psi = A e^{iqx} + B e^{-iqx}
    // with q = k, kminus, kplus, k from left to right
    std::complex<double> A1, B1;  // x < -1
    std::complex<double> Am, Bm;  // -1 < x < 0
    std::complex<double> Ap, Bp;  // 0 < x < 1
    std::complex<double> A2, B2;  // x > 1

    double energy() const { return k * k; }
};

// eigenfunction of H; throws std::invalid_argument unless k > 0
EigenSolution build_psi(double k, double Z, Branch b);
// eigenfunction of the adjoint H^dagger (same formulas with Z -> -Z)
EigenSolution build_phi(double k, double Z, Branch b);

std::complex<double> evaluate(const EigenSolution& s, double x);
std::complex<double> evaluate_deriv(const EigenSolution& s, double x);

// evaluate a specific plane-wave piece regardless of where x lies; used by
// the interface-matching checks to compare both sides of an edge
enum class Piece { left_outer, left_step, right_step, right_outer };
std::complex<double> evaluate_piece(const EigenSolution& s, Piece p, double x);
std::complex<double> evaluate_piece_deriv(const EigenSolution& s, Piece p, double x);
// residual of the piecewise ODE using the analytic second derivative,
// |-psi'' + i Zeff nu(x) psi - k^2 psi|
double ode_residual(const EigenSolution& s, double x);

// worst interface jumps over the three edges
struct MatchReport {
    double worst_value_jump = 0.0;
    double worst_deriv_jump = 0.0;
};
MatchReport matching_residuals(const EigenSolution& s);

// Smeared biorthonormality test: weight the H-eigenfunctions with a
// Gaussian window w(l) = exp(-(l-k0)^2/(2 window^2)), integrate against an
// adjoint eigenfunction at k0, and compare with the delta-normalized
// prediction (w(k0) when the branches agree, 0 otherwise). The smearing
// localizes the state, so the x-integral converges on a finite range; the
// spread compares two quadrature resolutions. Requires k0 > 6 window so
// the window stays inside l > 0 (near l = 0 the plane-wave coefficients
// grow like Z/l).
struct BiorthReport {
    std::complex<double> value;
    std::complex<double> expected;
    double deviation;  // |value - expected|
    double spread;     // extrapolation diagnostic
    bool converged;
};
BiorthReport biorthonormality_check(double k0, double window, double Z,
                                    Branch phi_branch, Branch psi_branch);

}  // namespace istep
