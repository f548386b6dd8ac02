#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "simd/simd.hpp"
#include "metric.hpp"
#include "params.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

using namespace istep;

namespace {

struct Reset {
    ~Reset() { simd::set_mode(simd::Mode::automatic); }
};

std::vector<double> randvec(size_t n, uint32_t seed, double lo = -6.0, double hi = 6.0) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng);
    return v;
}

double max_rel_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        double scale = std::max({std::abs(a[i]), std::abs(b[i]), 1.0});
        worst = std::max(worst, std::abs(a[i] - b[i]) / scale);
    }
    return worst;
}

}  // namespace

TEST_CASE("mode switching is observable and safe") {
    Reset guard;
    simd::set_mode(simd::Mode::force_scalar);
    CHECK(std::string(simd::active_name()) == "scalar");
    if (simd::avx2_supported()) {
        simd::set_mode(simd::Mode::force_avx2);
        CHECK(std::string(simd::active_name()) == "avx2");
    } else {
        CHECK_THROWS_AS(simd::set_mode(simd::Mode::force_avx2), std::runtime_error);
    }
    simd::set_mode(simd::Mode::automatic);
}

TEST_CASE("batched g matches the scalar profile") {
    Reset guard;
    auto s = randvec(1037, 11);
    std::vector<double> out(s.size());
    simd::g_batch(s.data(), out.data(), s.size());
    for (size_t i = 0; i < s.size(); ++i)
        CHECK(out[i] == doctest::Approx(g_profile(s[i])).epsilon(1e-14));
}

TEST_CASE("vector paths agree with the scalar reference") {
    Reset guard;
    if (!simd::avx2_supported()) {
        MESSAGE("no avx2 on this host, dispatch test reduces to scalar/scalar");
    }
    const size_t n = 1031;  // odd on purpose, exercises the tail loop
    auto ys = randvec(n, 21);
    auto nu_ys = randvec(n, 22, -1.0, 1.0);
    auto va = randvec(n, 23);
    auto vb = randvec(n, 24);
    std::vector<std::complex<double>> cv(n);
    for (size_t i = 0; i < n; ++i) cv[i] = {va[i], vb[i]};

    const double x = 0.37, nu_x = -1.0;

    simd::set_mode(simd::Mode::force_scalar);
    std::vector<double> eta_s(n), xr_s(n), h2_s(n), g_s(n);
    simd::eta1_row_im(x, ys.data(), eta_s.data(), n);
    simd::x_row_im(x, ys.data(), xr_s.data(), n);
    simd::h2_row(x, nu_x, ys.data(), nu_ys.data(), h2_s.data(), n);
    simd::g_batch(ys.data(), g_s.data(), n);
    double dot_s = simd::dot(va.data(), vb.data(), n);
    auto csum_s = simd::row_csum(eta_s.data(), cv.data(), n);

    simd::set_mode(simd::avx2_supported() ? simd::Mode::force_avx2
                                          : simd::Mode::force_scalar);
    std::vector<double> eta_v(n), xr_v(n), h2_v(n), g_v(n);
    simd::eta1_row_im(x, ys.data(), eta_v.data(), n);
    simd::x_row_im(x, ys.data(), xr_v.data(), n);
    simd::h2_row(x, nu_x, ys.data(), nu_ys.data(), h2_v.data(), n);
    simd::g_batch(ys.data(), g_v.data(), n);
    double dot_v = simd::dot(va.data(), vb.data(), n);
    auto csum_v = simd::row_csum(eta_v.data(), cv.data(), n);

    CHECK(max_rel_diff(eta_s, eta_v) <= 1e-13);
    CHECK(max_rel_diff(xr_s, xr_v) <= 1e-13);
    CHECK(max_rel_diff(h2_s, h2_v) <= 1e-13);
    CHECK(max_rel_diff(g_s, g_v) <= 1e-13);
    CHECK(std::abs(dot_s - dot_v) <= 1e-13 * (1.0 + std::abs(dot_s)));
    CHECK(std::abs(csum_s - csum_v) <= 1e-13 * (1.0 + std::abs(csum_s)));
}

TEST_CASE("row kernels match their pointwise definitions") {
    Reset guard;
    const size_t n = 257;
    auto ys = randvec(n, 31);
    std::vector<double> nu_ys(n);
    for (size_t i = 0; i < n; ++i) nu_ys[i] = nu(ys[i]);
    const double x = -1.2;

    std::vector<double> eta_row(n), x_row(n), h_row(n);
    simd::eta1_row_im(x, ys.data(), eta_row.data(), n);
    simd::x_row_im(x, ys.data(), x_row.data(), n);
    simd::h2_row(x, nu(x), ys.data(), nu_ys.data(), h_row.data(), n);

    for (size_t i = 0; i < n; ++i) {
        CHECK(eta_row[i] == doctest::Approx(eta1_kernel(x, ys[i]).imag()).epsilon(1e-14));
        double xi = 0.5 * g_profile(x + ys[i]) * std::abs(x - ys[i]);
        CHECK(x_row[i] == doctest::Approx(xi).epsilon(1e-14));
        double sg = (x > ys[i]) - (x < ys[i]);
        double h2 = 0.25 * g_profile(x + ys[i]) * sg * (nu(x) - nu(ys[i]));
        CHECK(h_row[i] == doctest::Approx(h2).epsilon(1e-14));
    }
}
