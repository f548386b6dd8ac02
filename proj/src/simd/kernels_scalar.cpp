#include "simd.hpp"

#include <cmath>

// Reference implementations. Branch-free formulations so the AVX2 port is
// a direct transliteration.

namespace istep::simd {

namespace {

inline double sgn(double v) { return (double)(v > 0.0) - (double)(v < 0.0); }

inline double g_of(double s) {
    return 0.125 * (4.0 + 2.0 * std::fabs(s) - std::fabs(s + 2.0) - std::fabs(s - 2.0));
}

void s_g_batch(const double* s, double* out, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) out[j] = g_of(s[j]);
}

void s_eta1_row_im(double x, const double* ys, double* out, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) out[j] = g_of(x + ys[j]) * sgn(x - ys[j]);
}

void s_x_row_im(double x, const double* ys, double* out, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) out[j] = 0.5 * g_of(x + ys[j]) * std::fabs(x - ys[j]);
}

void s_h2_row(double x, double nu_x, const double* ys, const double* nu_ys,
              double* out, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j)
        out[j] = 0.25 * g_of(x + ys[j]) * sgn(x - ys[j]) * (nu_x - nu_ys[j]);
}

double s_dot(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += a[j] * b[j];
    return acc;
}

std::complex<double> s_row_csum(const double* k, const std::complex<double>* v, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        re += k[j] * v[j].real();
        im += k[j] * v[j].imag();
    }
    return {re, im};
}

}  // namespace

const Table& scalar_table() {
    static const Table t{s_g_batch, s_eta1_row_im, s_x_row_im, s_h2_row, s_dot, s_row_csum};
    return t;
}

}  // namespace istep::simd
