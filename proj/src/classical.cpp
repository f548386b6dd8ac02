#include "classical.hpp"

#include "numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace istep {

double ClassicalHamiltonian::energy(double x, double p) const {
    const PhysicalParams& pp = params();
    double z2 = pp.zeta * pp.zeta;
    double acc = p * p / (2.0 * pp.m);
    double p2n = 1.0;
    for (int n = 0; n <= truncation; ++n) {
        acc += z2 * coeffs.alpha(n, x) * p2n;
        p2n *= p * p;
    }
    return acc;
}

double ClassicalHamiltonian::dHdx(double x, double p) const {
    const PhysicalParams& pp = params();
    double z2 = pp.zeta * pp.zeta;
    double acc = 0.0;
    double p2n = 1.0;
    for (int n = 0; n <= truncation; ++n) {
        acc += z2 * coeffs.alpha_deriv(n, x) * p2n;
        p2n *= p * p;
    }
    return acc;
}

double ClassicalHamiltonian::dHdp(double x, double p) const {
    const PhysicalParams& pp = params();
    double z2 = pp.zeta * pp.zeta;
    double acc = p / pp.m;
    double p2nm1 = p;  // p^{2n-1}
    for (int n = 1; n <= truncation; ++n) {
        acc += z2 * coeffs.alpha(n, x) * 2.0 * n * p2nm1;
        p2nm1 *= p * p;
    }
    return acc;
}

ClassicalHamiltonian make_hamiltonian(const PhysicalParams& p, int truncation,
                                      int samples_per_piece) {
    if (truncation < 0 || truncation > 2)
        throw std::invalid_argument("make_hamiltonian: truncation must be 0, 1 or 2");
    return {build_coeff_splines(p, samples_per_piece), truncation};
}

const char* traj_class_name(TrajClass c) {
    switch (c) {
        case TrajClass::open: return "open";
        case TrajClass::closed: return "closed";
        default: return "undetermined";
    }
}

namespace {

void step_midpoint(const ClassicalHamiltonian& H, PhaseState& z, double dt,
                   const IntegrateOptions& opt) {
    double xm = z.x, pm = z.p;
    bool done = false;
    for (int it = 0; it < opt.max_fixed_point; ++it) {
        double xn = z.x + 0.5 * dt * H.dHdp(xm, pm);
        double pn = z.p - 0.5 * dt * H.dHdx(xm, pm);
        double delta = std::fabs(xn - xm) + std::fabs(pn - pm);
        xm = xn;
        pm = pn;
        if (delta < opt.fp_tol) {
            done = true;
            break;
        }
    }
    if (!done)
        throw num::ConvergenceError("integrate: implicit midpoint fixed point stalled; reduce dt");
    z.x = 2.0 * xm - z.x;
    z.p = 2.0 * pm - z.p;
    z.t += dt;
}

void step_verlet(const ClassicalHamiltonian& H, PhaseState& z, double dt) {
    // separable case: kick-drift-kick with V = zeta^2 alpha_0
    double ph = z.p - 0.5 * dt * H.dHdx(z.x, 0.0);
    z.x += dt * ph / H.params().m;
    z.p = ph - 0.5 * dt * H.dHdx(z.x, 0.0);
    z.t += dt;
}

TrajClass classify(const std::vector<PhaseState>& samples, const PhysicalParams& p) {
    double escape = 1.5 * p.L + 0.5;
    double max_abs_x = 0.0;
    int sign_flips = 0;
    double prev_sign = 0.0;
    for (const auto& s : samples) {
        max_abs_x = std::max(max_abs_x, std::fabs(s.x));
        double sg = (s.p > 0.0) ? 1.0 : (s.p < 0.0 ? -1.0 : 0.0);
        if (sg != 0.0) {
            if (prev_sign != 0.0 && sg != prev_sign) ++sign_flips;
            prev_sign = sg;
        }
    }
    if (max_abs_x > escape) return TrajClass::open;
    if (sign_flips >= 2) return TrajClass::closed;
    return TrajClass::undetermined;
}

}  // namespace

Trajectory integrate(const ClassicalHamiltonian& H, PhaseState init,
                     const IntegrateOptions& opt) {
    if (!(opt.dt > 0.0) || !(opt.t_end > 0.0))
        throw std::invalid_argument("integrate: dt and t_end must be positive");

    Trajectory tr;
    tr.energy0 = H.energy(init.x, init.p);
    long nsteps = (long)std::llround(opt.t_end / opt.dt);
    int stride = std::max(1, opt.sample_stride);
    tr.samples.reserve((std::size_t)(nsteps / stride + 2));

    PhaseState z = init;
    tr.samples.push_back(z);
    for (long s = 1; s <= nsteps; ++s) {
        if (H.truncation == 0)
            step_verlet(H, z, opt.dt);
        else
            step_midpoint(H, z, opt.dt, opt);
        if (s % stride == 0 || s == nsteps) {
            tr.samples.push_back(z);
            tr.max_energy_drift = std::max(
                tr.max_energy_drift, std::fabs(H.energy(z.x, z.p) - tr.energy0));
        }
    }
    tr.cls = classify(tr.samples, H.params());
    return tr;
}

std::vector<Trajectory> phase_portrait(const ClassicalHamiltonian& H,
                                       const std::vector<PhaseState>& inits,
                                       const IntegrateOptions& opt) {
    std::vector<Trajectory> out(inits.size());
    num::parallel_for(inits.size(), [&](std::size_t i) { out[i] = integrate(H, inits[i], opt); });
    return out;
}

std::vector<PhaseState> default_portrait_inits(const PhysicalParams& p) {
    // wells sit near |x| ~ 1.25 L; starts in both wells, the interior, and
    // free passes from the left
    double xw = 1.25 * p.L;
    return {
        {xw, 0.0, 0.0},      {xw, 0.02, 0.0},   {xw, -0.02, 0.0},  {xw, 0.035, 0.0},
        {-xw, 0.0, 0.0},     {-xw, 0.02, 0.0},  {0.0, 0.1, 0.0},   {0.0, -0.1, 0.0},
        {-2.5 * p.L, 1.0, 0.0}, {-2.5 * p.L, 1.5, 0.0}, {0.0, 2.0, 0.0}, {xw, 0.5, 0.0},
    };
}

}  // namespace istep
