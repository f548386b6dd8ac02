#pragma once

#include <complex>
#include <cstddef>

// Batch kernels for the hot inner loops (kernel-row sampling and
// reductions). A scalar reference implementation always exists; an AVX2
// variant is selected at runtime when the CPU supports it. The two are
// equivalence-tested against each other.

namespace istep::simd {

enum class Mode {
    automatic,     // pick AVX2 when available
    force_scalar,  // reference path
    force_avx2,    // throws on unsupported hardware
};

bool avx2_supported();
void set_mode(Mode m);
Mode requested_mode();
const char* active_name();  // "scalar" or "avx2"

// piecewise-linear profile g(s) = (4 + 2|s| - |s+2| - |s-2|)/8 on a batch
void g_batch(const double* s, double* out, std::size_t n);

// out_j = g(x + y_j) * sgn(x - y_j)   (imaginary part of the first-order
// metric kernel at row x)
void eta1_row_im(double x, const double* ys, double* out, std::size_t n);

// out_j = 0.5 * g(x + y_j) * |x - y_j|   (imaginary part of the position
// correction kernel at row x)
void x_row_im(double x, const double* ys, double* out, std::size_t n);

// out_j = 0.25 * g(x + y_j) * sgn(x - y_j) * (nu_x - nu_y_j)   (row of the
// second-order equivalent-Hamiltonian kernel; nu values precomputed)
void h2_row(double x, double nu_x, const double* ys, const double* nu_ys,
            double* out, std::size_t n);

// sum_j a_j b_j
double dot(const double* a, const double* b, std::size_t n);

// sum_j k_j v_j for a real row against a complex vector
std::complex<double> row_csum(const double* k, const std::complex<double>* v, std::size_t n);

struct Table {
    void (*g_batch)(const double*, double*, std::size_t);
    void (*eta1_row_im)(double, const double*, double*, std::size_t);
    void (*x_row_im)(double, const double*, double*, std::size_t);
    void (*h2_row)(double, double, const double*, const double*, double*, std::size_t);
    double (*dot)(const double*, const double*, std::size_t);
    std::complex<double> (*row_csum)(const double*, const std::complex<double>*, std::size_t);
};

const Table& scalar_table();
const Table& avx2_table();  // only valid to call through when avx2_supported()

}  // namespace istep::simd
