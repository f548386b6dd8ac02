#include "hequiv.hpp"

#include "metric.hpp"
#include "numerics.hpp"

#include <gsl/gsl_interp.h>
#include <gsl/gsl_spline.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace istep {

namespace {
constexpr std::complex<double> I{0.0, 1.0};
}

double h2_kernel(double x, double y) {
    return 0.25 * g_profile(x + y) * sgn(x - y) * (nu(x) - nu(y));
}

double h2_kernel_via_blocks(double x, double y) {
    // (i/4)[eta1, nu] with the metric kernel taken from the region-block
    // table instead of the unified profile
    std::complex<double> e = block_kernel(region_of(x), region_of(y), x, y);
    std::complex<double> v = 0.25 * I * e * (nu(y) - nu(x));
    return v.real();
}

double h2_tail_plus(double x) { return -nu(x) / 8.0; }
double h2_tail_minus(double x) { return nu(x) / 8.0; }

std::vector<double> h2_breakpoints(double x) {
    std::vector<double> b = {-2.0 - x, -x, 2.0 - x, x, -1.0, 0.0, 1.0};
    std::sort(b.begin(), b.end());
    return b;
}

namespace {

// integral of (alpha y + beta) y^n over [a, b]
double line_moment(double alpha, double beta, double a, double b, int n) {
    return alpha * (std::pow(b, n + 2) - std::pow(a, n + 2)) / (n + 2) +
           beta * (std::pow(b, n + 1) - std::pow(a, n + 1)) / (n + 1);
}

struct Cell {
    double a, b;       // bounds
    double alpha, beta;  // K_reg(x, y) = alpha y + beta on the cell
};

// K(x, .) is linear between breakpoints; reconstruct each cell line from
// two interior samples and subtract the half-line tail constant
std::vector<Cell> reg_cells(double x) {
    auto bps = h2_breakpoints(x);
    const double cp = h2_tail_plus(x), cm = h2_tail_minus(x);
    std::vector<Cell> cells;
    for (std::size_t s = 0; s + 1 < bps.size(); ++s) {
        double a = bps[s], b = bps[s + 1];
        if (b - a < 1e-12) continue;
        double y1 = 0.75 * a + 0.25 * b, y2 = 0.25 * a + 0.75 * b;
        double k1 = h2_kernel(x, y1), k2 = h2_kernel(x, y2);
        double alpha = (k2 - k1) / (y2 - y1);
        double beta = k1 - alpha * y1;
        beta -= (0.5 * (a + b) > 0.0) ? cp : cm;
        cells.push_back({a, b, alpha, beta});
    }
    return cells;
}

}  // namespace

std::array<double, 6> h2_reg_moments(double x) {
    std::array<double, 6> M{};
    for (const Cell& c : reg_cells(x))
        for (int n = 0; n < 6; ++n) M[(std::size_t)n] += line_moment(c.alpha, c.beta, c.a, c.b, n);
    return M;
}

std::array<std::complex<double>, 6> omega_coeffs(double x) {
    auto M = h2_reg_moments(x);
    std::array<std::complex<double>, 6> w;
    std::complex<double> in = 1.0;  // i^n
    double fact = 1.0;
    for (int n = 0; n < 6; ++n) {
        if (n > 0) {
            in *= I;
            fact *= n;
        }
        w[(std::size_t)n] = in * M[(std::size_t)n] / fact;
    }
    return w;
}

std::complex<double> h2_pole_residue(double x) { return -I * nu(x) / 4.0; }

MomentumRepr h2_momentum_repr(double x, double p, double eps) {
    MomentumRepr r;
    r.pole_residue = h2_pole_residue(x);
    std::complex<double> acc = 0.0;
    if (eps > 0.0) {
        // damped quadrature cross-check path
        auto bps = h2_breakpoints(x);
        const double cp = h2_tail_plus(x), cm = h2_tail_minus(x);
        acc = num::gl_integrate(bps.front(), bps.back(), bps, 0.25, 8, [&](double y) {
            double kreg = h2_kernel(x, y) - (y > 0.0 ? cp : cm);
            return kreg * std::exp(I * p * y) * std::exp(-eps * std::fabs(y));
        });
    } else if (std::fabs(p) <= 1e-4) {
        // short Taylor series in p; keeps the p -> 0 limit exact
        for (const Cell& c : reg_cells(x)) {
            std::complex<double> ipn = 1.0;
            double fact = 1.0;
            for (int n = 0; n <= 8; ++n) {
                if (n > 0) {
                    ipn *= I * p;
                    fact *= n;
                }
                acc += ipn / fact * line_moment(c.alpha, c.beta, c.a, c.b, n);
            }
        }
    } else {
        // exact transform of each linear piece
        const std::complex<double> ip{0.0, p};
        for (const Cell& c : reg_cells(x)) {
            auto F = [&](double y) {
                return std::exp(ip * y) * ((c.alpha * y + c.beta) / ip - c.alpha / (ip * ip));
            };
            acc += F(c.b) - F(c.a);
        }
    }
    r.regular = acc;
    return r;
}

namespace {

double gauss_tf(const GaussianTF& f, double x) {
    double u = (x - f.x0) / f.sigma;
    return std::exp(-0.5 * u * u);
}

double gauss_tf_dd(const GaussianTF& f, double x) {
    double s2 = f.sigma * f.sigma;
    double d = x - f.x0;
    return gauss_tf(f, x) * (d * d / (s2 * s2) - 1.0 / s2);
}

double tf_norm(const GaussianTF& f) {
    // L2 norm of exp(-u^2/2): (pi sigma^2)^(1/4) ... ||f||^2 = sigma sqrt(pi)
    return std::sqrt(f.sigma * std::sqrt(M_PI));
}

// weak matrix element <f| [p^2, Q1] |g> at midpoint resolution n
std::complex<double> p2q1_weak(const GaussianTF& f, const GaussianTF& g, int n) {
    double ax = f.x0 - 8.0 * f.sigma, bx = f.x0 + 8.0 * f.sigma;
    double ay = g.x0 - 8.0 * g.sigma, by = g.x0 + 8.0 * g.sigma;
    auto xnodes = num::midpoint_nodes(ax, bx, {-1.0, 0.0, 1.0}, n);
    std::vector<std::complex<double>> partial(xnodes.size());
    num::parallel_for(xnodes.size(), [&](std::size_t ix) {
        auto [x, wx] = xnodes[ix];
        std::vector<double> ycuts = {-2.0 - x, -x, 2.0 - x, x};
        std::complex<double> W = 0.0, V = 0.0;
        for (const auto& [y, wy] : num::midpoint_nodes(ay, by, ycuts, n)) {
            std::complex<double> q1 = q1_kernel(x, y);
            W += wy * q1 * gauss_tf(g, y);
            V += wy * q1 * gauss_tf_dd(g, y);
        }
        partial[ix] = wx * (-gauss_tf_dd(f, x) * W + gauss_tf(f, x) * V);
    });
    std::complex<double> acc = 0.0;
    for (const auto& v : partial) acc += v;
    return acc;
}

std::complex<double> nu_weak(const GaussianTF& f, const GaussianTF& g, int n) {
    double ax = std::max(f.x0 - 8.0 * f.sigma, -1.0);
    double bx = std::min(f.x0 + 8.0 * f.sigma, 1.0);
    if (!(bx > ax)) return 0.0;
    std::complex<double> acc = 0.0;
    for (const auto& [x, w] : num::midpoint_nodes(ax, bx, {0.0}, n))
        acc += w * gauss_tf(f, x) * nu(x) * gauss_tf(g, x);
    return acc;
}

}  // namespace

double p2q1_weak_residual(const GaussianTF& f, const GaussianTF& g, int n) {
    std::complex<double> lhs = p2q1_weak(f, g, n);
    std::complex<double> rhs = -2.0 * I * nu_weak(f, g, n);
    return std::abs(lhs - rhs) / (tf_norm(f) * tf_norm(g));
}

double h1_weak_residual(const GaussianTF& f, const GaussianTF& g, int n) {
    std::complex<double> v = I * nu_weak(f, g, n) + 0.5 * p2q1_weak(f, g, n);
    return std::abs(v) / (tf_norm(f) * tf_norm(g));
}

std::vector<double> default_coeff_grid() {
    std::vector<double> g(801);
    for (int i = 0; i < 801; ++i) g[(std::size_t)i] = -4.0 + 0.01 * i;
    return g;
}

namespace {

bool stencil_hits_jump(double lo, double hi) {
    for (double knot : {-1.0, 0.0, 1.0})
        if (lo <= knot && knot <= hi) return true;
    return false;
}

double alpha_scale(int n, const PhysicalParams& p) {
    return 2.0 * p.m * std::pow(p.L / (2.0 * p.hbar), 2.0 * (n + 1));
}

}  // namespace

CoeffTable extract_coeffs(const std::vector<double>& grid, const PhysicalParams& p,
                          int n_max) {
    if (grid.size() < 3) throw std::invalid_argument("extract_coeffs: need >= 3 grid points");
    if (n_max != 5) throw std::invalid_argument("extract_coeffs: table layout expects n_max = 5");
    p.validate();

    const std::size_t N = grid.size();
    CoeffTable t;
    t.params = p;
    t.x = grid;
    for (auto& w : t.omega) w.resize(N);
    for (auto& a : t.a) a.resize(N);
    for (auto& a : t.alpha) a.resize(N);
    t.pole_residue_im.resize(N);
    t.fd_artifact.resize(N);

    num::parallel_for(N, [&](std::size_t i) {
        auto w = omega_coeffs(grid[i]);
        for (int n = 0; n < 6; ++n) t.omega[(std::size_t)n][i] = w[(std::size_t)n];
        t.pole_residue_im[i] = h2_pole_residue(grid[i]).imag();
    });

    // a_n = Re omega_{2n} - d/dx Im omega_{2n+1}; centered differences on
    // the grid, one-sided at the two ends
    for (int n = 0; n < 3; ++n) {
        const auto& wodd = t.omega[(std::size_t)(2 * n + 1)];
        const auto& weven = t.omega[(std::size_t)(2 * n)];
        for (std::size_t i = 0; i < N; ++i) {
            std::size_t lo = (i == 0) ? 0 : i - 1;
            std::size_t hi = (i == N - 1) ? N - 1 : i + 1;
            double d = (wodd[hi].imag() - wodd[lo].imag()) / (grid[hi] - grid[lo]);
            t.a[(std::size_t)n][i] = weven[i].real() - d;
            t.alpha[(std::size_t)n][i] = alpha_scale(n, p) * t.a[(std::size_t)n][i];
            if (n == 0) t.fd_artifact[i] = stencil_hits_jump(grid[lo], grid[hi]) ? 1 : 0;
        }
    }
    return t;
}

std::array<double, 3> a_coeffs_at(double x) {
    const double h = 1e-4;
    auto w0 = omega_coeffs(x);
    auto wp = omega_coeffs(x + h);
    auto wm = omega_coeffs(x - h);
    std::array<double, 3> a;
    for (int n = 0; n < 3; ++n) {
        double d = (wp[(std::size_t)(2 * n + 1)].imag() - wm[(std::size_t)(2 * n + 1)].imag()) /
                   (2.0 * h);
        a[(std::size_t)n] = w0[(std::size_t)(2 * n)].real() - d;
    }
    return a;
}

double alpha_coeff_at(int n, double x, const PhysicalParams& p) {
    if (n < 0 || n > 2) throw std::invalid_argument("alpha_coeff_at: n out of range");
    return alpha_scale(n, p) * a_coeffs_at(x)[(std::size_t)n];
}

struct CoeffSplines::Impl {
    PhysicalParams params;
    double xmax = 0.0;
    std::array<gsl_spline*, 3> spl{nullptr, nullptr, nullptr};

    ~Impl() {
        for (auto* s : spl)
            if (s) gsl_spline_free(s);
    }
};

CoeffSplines::CoeffSplines() : impl_(new Impl) {}
CoeffSplines::CoeffSplines(CoeffSplines&&) noexcept = default;
CoeffSplines& CoeffSplines::operator=(CoeffSplines&&) noexcept = default;
CoeffSplines::~CoeffSplines() = default;

const PhysicalParams& CoeffSplines::params() const { return impl_->params; }

CoeffSplines build_coeff_splines(const PhysicalParams& p, int samples_per_piece) {
    p.validate();
    if (samples_per_piece < 4)
        throw std::invalid_argument("build_coeff_splines: need >= 4 samples per piece");

    CoeffSplines cs;
    cs.impl_->params = p;
    cs.impl_->xmax = 1.5 * p.L;

    // sample a_n off the knots (piece midpoint offsets avoid the jump
    // points of the coefficients at 0, +-1 and the kinks at +-3)
    std::vector<double> xs;  // physical
    std::vector<std::array<double, 3>> vals;
    xs.push_back(-cs.impl_->xmax);
    vals.push_back({0.0, 0.0, 0.0});
    for (int piece = 0; piece < 6; ++piece) {
        double lo = -3.0 + piece;
        for (int s = 0; s < samples_per_piece; ++s) {
            double xp = lo + (s + 0.5) / samples_per_piece;
            xs.push_back(0.5 * p.L * xp);
            vals.push_back(a_coeffs_at(xp));
        }
    }
    xs.push_back(cs.impl_->xmax);
    vals.push_back({0.0, 0.0, 0.0});

    std::vector<double> ys(xs.size());
    for (int n = 0; n < 3; ++n) {
        for (std::size_t i = 0; i < xs.size(); ++i)
            ys[i] = alpha_scale(n, p) * vals[i][(std::size_t)n];
        gsl_spline* s = gsl_spline_alloc(gsl_interp_cspline, xs.size());
        gsl_spline_init(s, xs.data(), ys.data(), xs.size());
        cs.impl_->spl[(std::size_t)n] = s;
    }
    return cs;
}

double CoeffSplines::alpha(int n, double x_phys) const {
    if (n < 0 || n > 2) throw std::invalid_argument("CoeffSplines::alpha: n out of range");
    if (std::fabs(x_phys) >= impl_->xmax) return 0.0;
    return gsl_spline_eval(impl_->spl[(std::size_t)n], x_phys, nullptr);
}

double CoeffSplines::alpha_deriv(int n, double x_phys) const {
    if (n < 0 || n > 2) throw std::invalid_argument("CoeffSplines::alpha_deriv: n out of range");
    if (std::fabs(x_phys) >= impl_->xmax) return 0.0;
    return gsl_spline_eval_deriv(impl_->spl[(std::size_t)n], x_phys, nullptr);
}

double effective_mass(double x_phys, const CoeffSplines& cs) {
    const PhysicalParams& p = cs.params();
    double denom = 1.0 + 2.0 * p.m * p.zeta * p.zeta * cs.alpha(1, x_phys);
    if (!(denom > 0.0))
        throw std::domain_error("effective_mass: non-positive denominator");
    return p.m / denom;
}

double w_potential(double x_phys, const CoeffSplines& cs) {
    const PhysicalParams& p = cs.params();
    return p.zeta * p.zeta * cs.alpha(0, x_phys);
}

namespace {

std::complex<double> packet_value(const GaussPacket& pk, double y) {
    double d = y - pk.x0;
    return std::exp(std::complex<double>(-d * d / (4.0 * pk.sigma * pk.sigma), pk.p0 * y));
}

std::complex<double> packet_sign_integral(const GaussPacket& pk) {
    return num::gl_integrate(-40.0, 40.0, {0.0}, 0.5, 10,
                             [&](double y) { return sgn(y) * packet_value(pk, y); });
}

}  // namespace

std::complex<double> h2_action_quadrature(double x, const GaussPacket& pk) {
    auto cuts = h2_breakpoints(x);
    return num::gl_integrate(-40.0, 40.0, cuts, 0.5, 10,
                             [&](double y) { return h2_kernel(x, y) * packet_value(pk, y); });
}

std::complex<double> h2_action_truncated(double x, const GaussPacket& pk) {
    auto w = omega_coeffs(x);
    // derivatives of the packet at y = 0 from the log-derivative recurrence
    std::complex<double> qp0(pk.x0 / (2.0 * pk.sigma * pk.sigma), pk.p0);
    double qpp = -1.0 / (2.0 * pk.sigma * pk.sigma);
    std::array<std::complex<double>, 6> dpsi;
    dpsi[0] = packet_value(pk, 0.0);
    dpsi[1] = qp0 * dpsi[0];
    for (int n = 1; n < 5; ++n)
        dpsi[(std::size_t)(n + 1)] = qp0 * dpsi[(std::size_t)n] +
                                     (double)n * qpp * dpsi[(std::size_t)(n - 1)];

    std::complex<double> acc = 0.0;
    std::complex<double> min = 1.0;  // (-i)^n
    for (int n = 0; n < 6; ++n) {
        if (n > 0) min *= -I;
        acc += min * w[(std::size_t)n] * dpsi[(std::size_t)n];
    }
    acc -= nu(x) / 8.0 * packet_sign_integral(pk);
    return acc;
}

double h2_truncation_rel_l2(const GaussPacket& pk) {
    const int M = 360;
    double num2 = 0.0, den2 = 0.0;
    std::vector<double> nums(M), dens(M);
    num::parallel_for((std::size_t)M, [&](std::size_t j) {
        double x = -3.0 + (j + 0.5) / 60.0;
        std::complex<double> exact = h2_action_quadrature(x, pk);
        std::complex<double> trunc = h2_action_truncated(x, pk);
        nums[j] = std::norm(trunc - exact);
        dens[j] = std::norm(exact);
    });
    for (int j = 0; j < M; ++j) {
        num2 += nums[(std::size_t)j];
        den2 += dens[(std::size_t)j];
    }
    return std::sqrt(num2 / den2);
}

}  // namespace istep
