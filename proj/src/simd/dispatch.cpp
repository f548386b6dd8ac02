#include "simd.hpp"

#include <atomic>
#include <stdexcept>

namespace istep::simd {

namespace {

std::atomic<Mode> g_mode{Mode::automatic};

const Table* resolve() {
    Mode m = g_mode.load(std::memory_order_relaxed);
    if (m == Mode::force_scalar) return &scalar_table();
    if (m == Mode::force_avx2) return &avx2_table();
    return avx2_supported() ? &avx2_table() : &scalar_table();
}

std::atomic<const Table*> g_active{nullptr};

inline const Table& active() {
    const Table* t = g_active.load(std::memory_order_acquire);
    if (!t) {
        t = resolve();
        g_active.store(t, std::memory_order_release);
    }
    return *t;
}

}  // namespace

bool avx2_supported() {
#if defined(ISTEP_HAVE_AVX2)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

#ifndef ISTEP_HAVE_AVX2
// non-x86 build: the avx2 slot aliases the reference path and is never
// selected because avx2_supported() is false
const Table& avx2_table() { return scalar_table(); }
#endif

void set_mode(Mode m) {
    if (m == Mode::force_avx2 && !avx2_supported())
        throw std::runtime_error("simd: avx2 requested but not supported on this CPU");
    g_mode.store(m, std::memory_order_relaxed);
    g_active.store(resolve(), std::memory_order_release);
}

Mode requested_mode() { return g_mode.load(std::memory_order_relaxed); }

const char* active_name() { return &active() == &scalar_table() ? "scalar" : "avx2"; }

void g_batch(const double* s, double* out, std::size_t n) { active().g_batch(s, out, n); }

void eta1_row_im(double x, const double* ys, double* out, std::size_t n) {
    active().eta1_row_im(x, ys, out, n);
}

void x_row_im(double x, const double* ys, double* out, std::size_t n) {
    active().x_row_im(x, ys, out, n);
}

void h2_row(double x, double nu_x, const double* ys, const double* nu_ys,
            double* out, std::size_t n) {
    active().h2_row(x, nu_x, ys, nu_ys, out, n);
}

double dot(const double* a, const double* b, std::size_t n) { return active().dot(a, b, n); }

std::complex<double> row_csum(const double* k, const std::complex<double>* v, std::size_t n) {
    return active().row_csum(k, v, n);
}

}  // namespace istep::simd
