#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

// Small quadrature / extrapolation / threading helpers shared by the
// physics modules. Nothing here knows about the model.

namespace istep::num {

// thrown when an iterative or extrapolated computation fails to settle;
// the CLI maps it to exit code 3
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Gauss-Legendre nodes and weights on [-1,1], computed once per order
// via Newton iteration on the Legendre polynomial.
struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
};
const GaussRule& gauss_legendre(int n);

// Composite Gauss-Legendre over [a,b]. `cuts` lists interior points that
// must fall on panel boundaries (kinks of the integrand); between cuts the
// interval is split into panels no wider than `max_width`.
std::vector<std::pair<double, double>> panel_nodes(double a, double b,
                                                   const std::vector<double>& cuts,
                                                   double max_width, int order);

template <typename F>
auto gl_integrate(double a, double b, const std::vector<double>& cuts,
                  double max_width, int order, F&& f) {
    auto nodes = panel_nodes(a, b, cuts, max_width, order);
    using R = decltype(f(0.0));
    R acc{};
    for (const auto& [x, w] : nodes) acc += w * f(x);
    return acc;
}

// Composite midpoint rule with the same cut handling; n points total,
// distributed over the sub-intervals proportionally to their length.
std::vector<std::pair<double, double>> midpoint_nodes(double a, double b,
                                                      const std::vector<double>& cuts,
                                                      int n);

template <typename F>
auto midpoint_integrate(double a, double b, const std::vector<double>& cuts, int n, F&& f) {
    auto nodes = midpoint_nodes(a, b, cuts, n);
    using R = decltype(f(0.0));
    R acc{};
    for (const auto& [x, w] : nodes) acc += w * f(x);
    return acc;
}

// Neville tableau evaluated at t = 0: polynomial extrapolation of
// (t_i, v_i) samples, e.g. a damping-parameter ladder. `spread` reports
// the difference between the last two tableau columns as a convergence
// diagnostic.
struct Extrapolated {
    std::complex<double> value;
    double spread;
};
Extrapolated neville_at_zero(const std::vector<double>& t,
                             const std::vector<std::complex<double>>& v);

// Least-squares slope of log(err) against log(h); used by the
// order-of-convergence checks.
double loglog_slope(const std::vector<double>& h, const std::vector<double>& err);

// Thread count: ISTEP_THREADS if set and valid, otherwise
// hardware_concurrency (at least 1).
int thread_count();

// Static partition of [0,n) over thread_count() workers.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace istep::num
