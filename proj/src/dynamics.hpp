#pragma once

#include <complex>
#include <vector>

// Time evolution under the dimensionless H = p^2 + i Z nu(x) on a finite
// box with hard walls, discretized with the three-point Laplacian and
// advanced by Crank-Nicolson steps (tridiagonal solves). The L2 norm is
// not conserved at O(Z); the eta-weighted norm is conserved through O(Z)
// and its residual drift is O(Z^2), which the tests monitor.

namespace istep {

struct EvolutionRun {
    double B = 15.0;  // box [-B, B]
    int N = 2048;
    double Z = 0.1;
    double dx = 0.0;
    double t = 0.0;
    std::vector<double> x;                   // node positions (cell midpoints)
    std::vector<std::complex<double>> psi;   // node values
};

// Gaussian packet exp(-(x-x0)^2/(4 sigma^2) + i p0 x), L2-normalized
EvolutionRun make_gaussian_run(double B, int N, double Z, double x0, double p0,
                               double sigma);

// one Crank-Nicolson step of size dt
void step(EvolutionRun& run, double dt);

double l2_norm(const EvolutionRun& run);
// sqrt of <psi|psi> + Z <psi|eta1 psi> (trapezoid quadratic form)
double eta_norm(const EvolutionRun& run);
// position expectation <x> in the plain L2 sense
double x_expectation(const EvolutionRun& run);
// matrix element <psi| nu |psi> / <psi|psi>, the source of the L2 drift
double nu_expectation(const EvolutionRun& run);

}  // namespace istep
