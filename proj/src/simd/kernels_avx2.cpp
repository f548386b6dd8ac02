#include "simd.hpp"

#include <cmath>
#include <immintrin.h>

// AVX2 + FMA variants of the batch kernels. This translation unit is the
// only one built with -mavx2; everything reaches it through the dispatch
// table after a runtime CPU check.

namespace istep::simd {

namespace {

const __m256d kAbsMask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
const __m256d kOne = _mm256_set1_pd(1.0);
const __m256d kTwo = _mm256_set1_pd(2.0);
const __m256d kFour = _mm256_set1_pd(4.0);
const __m256d kEighth = _mm256_set1_pd(0.125);

inline __m256d vabs(__m256d v) { return _mm256_and_pd(v, kAbsMask); }

inline __m256d vsgn(__m256d v) {
    __m256d zero = _mm256_setzero_pd();
    __m256d pos = _mm256_and_pd(_mm256_cmp_pd(v, zero, _CMP_GT_OQ), kOne);
    __m256d neg = _mm256_and_pd(_mm256_cmp_pd(zero, v, _CMP_GT_OQ), kOne);
    return _mm256_sub_pd(pos, neg);
}

inline __m256d vg(__m256d s) {
    __m256d t = _mm256_fmadd_pd(kTwo, vabs(s), kFour);
    t = _mm256_sub_pd(t, vabs(_mm256_add_pd(s, kTwo)));
    t = _mm256_sub_pd(t, vabs(_mm256_sub_pd(s, kTwo)));
    return _mm256_mul_pd(kEighth, t);
}

inline double g_of(double s) {
    return 0.125 * (4.0 + 2.0 * std::fabs(s) - std::fabs(s + 2.0) - std::fabs(s - 2.0));
}
inline double sgn1(double v) { return (double)(v > 0.0) - (double)(v < 0.0); }

void a_g_batch(const double* s, double* out, std::size_t n) {
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4)
        _mm256_storeu_pd(out + j, vg(_mm256_loadu_pd(s + j)));
    for (; j < n; ++j) out[j] = g_of(s[j]);
}

void a_eta1_row_im(double x, const double* ys, double* out, std::size_t n) {
    __m256d vx = _mm256_set1_pd(x);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        __m256d y = _mm256_loadu_pd(ys + j);
        __m256d g = vg(_mm256_add_pd(vx, y));
        __m256d s = vsgn(_mm256_sub_pd(vx, y));
        _mm256_storeu_pd(out + j, _mm256_mul_pd(g, s));
    }
    for (; j < n; ++j) out[j] = g_of(x + ys[j]) * sgn1(x - ys[j]);
}

void a_x_row_im(double x, const double* ys, double* out, std::size_t n) {
    __m256d vx = _mm256_set1_pd(x);
    __m256d half = _mm256_set1_pd(0.5);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        __m256d y = _mm256_loadu_pd(ys + j);
        __m256d g = vg(_mm256_add_pd(vx, y));
        __m256d d = vabs(_mm256_sub_pd(vx, y));
        _mm256_storeu_pd(out + j, _mm256_mul_pd(half, _mm256_mul_pd(g, d)));
    }
    for (; j < n; ++j) out[j] = 0.5 * g_of(x + ys[j]) * std::fabs(x - ys[j]);
}

void a_h2_row(double x, double nu_x, const double* ys, const double* nu_ys,
              double* out, std::size_t n) {
    __m256d vx = _mm256_set1_pd(x);
    __m256d vnx = _mm256_set1_pd(nu_x);
    __m256d quarter = _mm256_set1_pd(0.25);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        __m256d y = _mm256_loadu_pd(ys + j);
        __m256d g = vg(_mm256_add_pd(vx, y));
        __m256d s = vsgn(_mm256_sub_pd(vx, y));
        __m256d dn = _mm256_sub_pd(vnx, _mm256_loadu_pd(nu_ys + j));
        __m256d r = _mm256_mul_pd(_mm256_mul_pd(g, s), _mm256_mul_pd(quarter, dn));
        _mm256_storeu_pd(out + j, r);
    }
    for (; j < n; ++j)
        out[j] = 0.25 * g_of(x + ys[j]) * sgn1(x - ys[j]) * (nu_x - nu_ys[j]);
}

double a_dot(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 8 <= n; j += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + j), _mm256_loadu_pd(b + j), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + j + 4), _mm256_loadu_pd(b + j + 4), acc1);
    }
    for (; j + 4 <= n; j += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + j), _mm256_loadu_pd(b + j), acc0);
    __m256d acc = _mm256_add_pd(acc0, acc1);
    double lanes[4];
    _mm256_storeu_pd(lanes, acc);
    double total = (lanes[0] + lanes[2]) + (lanes[1] + lanes[3]);
    for (; j < n; ++j) total += a[j] * b[j];
    return total;
}

std::complex<double> a_row_csum(const double* k, const std::complex<double>* v, std::size_t n) {
    // v is interleaved re,im; expand each pair of k values to match
    __m256d acc = _mm256_setzero_pd();
    const double* vd = reinterpret_cast<const double*>(v);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        __m128d kp = _mm_loadu_pd(k + j);
        __m256d kk = _mm256_permute4x64_pd(_mm256_castpd128_pd256(kp), 0x50);  // k0 k0 k1 k1
        acc = _mm256_fmadd_pd(kk, _mm256_loadu_pd(vd + 2 * j), acc);
    }
    double lanes[4];
    _mm256_storeu_pd(lanes, acc);
    double re = lanes[0] + lanes[2];
    double im = lanes[1] + lanes[3];
    for (; j < n; ++j) {
        re += k[j] * v[j].real();
        im += k[j] * v[j].imag();
    }
    return {re, im};
}

}  // namespace

const Table& avx2_table() {
    static const Table t{a_g_batch, a_eta1_row_im, a_x_row_im, a_h2_row, a_dot, a_row_csum};
    return t;
}

}  // namespace istep::simd
