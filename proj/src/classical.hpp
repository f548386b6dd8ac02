#pragma once

#include "hequiv.hpp"
#include "params.hpp"

#include <vector>

// Classical dynamics generated by the truncated equivalent Hamiltonian
//     H(x, p) = p^2 / 2m + zeta^2 sum_{n <= trunc} alpha_n(x) p^{2n},
// with the alpha_n taken from the clamped spline interpolants. Outside the
// interaction region every alpha_n is exactly zero, so motion there is
// free by construction.

namespace istep {

struct ClassicalHamiltonian {
    CoeffSplines coeffs;
    int truncation = 2;  // highest power p^{2n} kept

    double energy(double x, double p) const;
    double dHdx(double x, double p) const;
    double dHdp(double x, double p) const;
    const PhysicalParams& params() const { return coeffs.params(); }
};

ClassicalHamiltonian make_hamiltonian(const PhysicalParams& p, int truncation = 2,
                                      int samples_per_piece = 64);

struct PhaseState {
    double x = 0.0;
    double p = 0.0;
    double t = 0.0;
};

enum class TrajClass { open, closed, undetermined };
const char* traj_class_name(TrajClass c);

struct IntegrateOptions {
    double t_end = 200.0;
    double dt = 1e-3;
    int sample_stride = 1;   // record every k-th step
    int max_fixed_point = 64;
    double fp_tol = 1e-14;
};

struct Trajectory {
    std::vector<PhaseState> samples;
    TrajClass cls = TrajClass::undetermined;
    double energy0 = 0.0;
    double max_energy_drift = 0.0;  // max |H - H0| over recorded samples
};

// fixed-step symplectic integration: Störmer–Verlet when the truncation is
// separable (trunc == 0), implicit midpoint with fixed-point solves for
// the full p^4 form. Throws std::runtime_error if a fixed-point solve
// stalls (step too large).
Trajectory integrate(const ClassicalHamiltonian& H, PhaseState init,
                     const IntegrateOptions& opt);

std::vector<Trajectory> phase_portrait(const ClassicalHamiltonian& H,
                                       const std::vector<PhaseState>& inits,
                                       const IntegrateOptions& opt);

// default initial conditions covering trapped orbits in the shallow outer
// wells, interior starts, and free passes over the region
std::vector<PhaseState> default_portrait_inits(const PhysicalParams& p);

}  // namespace istep
