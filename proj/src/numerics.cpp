#include "numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace istep::num {

namespace {

GaussRule compute_gauss(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev-like initial guess, then Newton on P_n
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        r.w[i] = w;
        r.w[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.x[n / 2] = 0.0;
    return r;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
    static std::mutex mtx;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gauss(n)).first;
    return it->second;
}

static std::vector<double> sorted_interior_cuts(double a, double b,
                                                const std::vector<double>& cuts) {
    std::vector<double> pts;
    pts.push_back(a);
    for (double c : cuts)
        if (c > a + 1e-14 && c < b - 1e-14) pts.push_back(c);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](double u, double v) { return std::abs(u - v) < 1e-14; }),
              pts.end());
    return pts;
}

std::vector<std::pair<double, double>> panel_nodes(double a, double b,
                                                   const std::vector<double>& cuts,
                                                   double max_width, int order) {
    if (!(b > a)) return {};
    const GaussRule& gr = gauss_legendre(order);
    auto pts = sorted_interior_cuts(a, b, cuts);
    std::vector<std::pair<double, double>> out;
    for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
        double lo = pts[s], hi = pts[s + 1];
        int m = std::max(1, (int)std::ceil((hi - lo) / max_width));
        double h = (hi - lo) / m;
        for (int p = 0; p < m; ++p) {
            double c = lo + (p + 0.5) * h;
            for (int q = 0; q < order; ++q)
                out.emplace_back(c + 0.5 * h * gr.x[q], 0.5 * h * gr.w[q]);
        }
    }
    return out;
}

std::vector<std::pair<double, double>> midpoint_nodes(double a, double b,
                                                      const std::vector<double>& cuts, int n) {
    if (!(b > a) || n < 1) return {};
    auto pts = sorted_interior_cuts(a, b, cuts);
    double total = b - a;
    std::vector<std::pair<double, double>> out;
    out.reserve((std::size_t)n + pts.size());
    for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
        double lo = pts[s], hi = pts[s + 1];
        int m = std::max(1, (int)std::lround(n * (hi - lo) / total));
        double h = (hi - lo) / m;
        for (int p = 0; p < m; ++p) out.emplace_back(lo + (p + 0.5) * h, h);
    }
    return out;
}

Extrapolated neville_at_zero(const std::vector<double>& t,
                             const std::vector<std::complex<double>>& v) {
    const std::size_t n = t.size();
    if (n == 0 || v.size() != n) throw std::invalid_argument("neville_at_zero: bad input");
    std::vector<std::complex<double>> col(v);
    std::complex<double> before = col[0];
    for (std::size_t lvl = 1; lvl < n; ++lvl) {
        for (std::size_t i = 0; i + lvl < n; ++i) {
            // value at t=0 of the interpolant through (t_i .. t_{i+lvl})
            col[i] = (t[i + lvl] * col[i] - t[i] * col[i + 1]) / (t[i + lvl] - t[i]);
        }
        if (lvl == n - 2) before = col[0];
    }
    double spread = (n > 1) ? std::abs(col[0] - before) : 0.0;
    return {col[0], spread};
}

double loglog_slope(const std::vector<double>& h, const std::vector<double>& err) {
    if (h.size() != err.size() || h.size() < 2)
        throw std::invalid_argument("loglog_slope: need >= 2 samples");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double n = (double)h.size();
    for (std::size_t i = 0; i < h.size(); ++i) {
        double lx = std::log(h[i]);
        double ly = std::log(std::max(err[i], 1e-300));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

int thread_count() {
    if (const char* env = std::getenv("ISTEP_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1 && v <= 1024) return (int)v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : (int)hc;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    int nt = thread_count();
    if (nt <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve((std::size_t)nt);
    std::size_t chunk = (n + nt - 1) / nt;
    for (int t = 0; t < nt; ++t) {
        std::size_t lo = (std::size_t)t * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace istep::num
