// AVX2+FMA kernel variants.  This translation unit is compiled with
// -mavx2 -mfma; it must only be entered after the runtime CPU check in
// dispatch.cpp.
//
// sin/cos use a two-term Cody-Waite pi/2 reduction with the fdlibm kernel
// polynomials, accurate to a few ulp for |x| up to ~1e6 rad -- far beyond
// the |dk|*L/2 arguments this library produces (|x| < ~1e5).

#include "qpm/kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <cmath>
#include <cstddef>
#include <cstdint>

namespace qpm::kernels {
namespace {

const __m256d kSignMask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x8000000000000000ll));

// 2/pi and the pi/2 split (fdlibm): pio2_1 has 33 trailing zero bits, so
// fn * pio2_1 is exact for |fn| < 2^20 and the first subtraction loses
// nothing.
const __m256d kInvPio2 = _mm256_set1_pd(6.36619772367581382433e-01);
const __m256d kPio2_1 = _mm256_set1_pd(1.57079632673412561417e+00);
const __m256d kPio2_1t = _mm256_set1_pd(6.07710050650619224932e-11);

// fdlibm __kernel_sin / __kernel_cos coefficients on |y| <= pi/4.
const __m256d kS1 = _mm256_set1_pd(-1.66666666666666324348e-01);
const __m256d kS2 = _mm256_set1_pd(8.33333333332248946124e-03);
const __m256d kS3 = _mm256_set1_pd(-1.98412698298579493134e-04);
const __m256d kS4 = _mm256_set1_pd(2.75573137070700676789e-06);
const __m256d kS5 = _mm256_set1_pd(-2.50507602534068634195e-08);
const __m256d kS6 = _mm256_set1_pd(1.58969099521155010221e-10);

const __m256d kC1 = _mm256_set1_pd(4.16666666666666019037e-02);
const __m256d kC2 = _mm256_set1_pd(-1.38888888888741095749e-03);
const __m256d kC3 = _mm256_set1_pd(2.48015872894767294178e-05);
const __m256d kC4 = _mm256_set1_pd(-2.75573143513906633035e-07);
const __m256d kC5 = _mm256_set1_pd(2.08757232129817482790e-09);
const __m256d kC6 = _mm256_set1_pd(-1.13596475577881948265e-11);

struct SinCos {
    __m256d s;
    __m256d c;
};

inline SinCos sincos4(__m256d x) {
    __m256d fn = _mm256_round_pd(_mm256_mul_pd(x, kInvPio2),
                                 _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(fn, kPio2_1, x);
    __m256d y = _mm256_fnmadd_pd(fn, kPio2_1t, r);
    __m256d z = _mm256_mul_pd(y, y);

    // sin(y) = y + y z (S1 + z (S2 + ...))
    __m256d sp = kS6;
    sp = _mm256_fmadd_pd(sp, z, kS5);
    sp = _mm256_fmadd_pd(sp, z, kS4);
    sp = _mm256_fmadd_pd(sp, z, kS3);
    sp = _mm256_fmadd_pd(sp, z, kS2);
    sp = _mm256_fmadd_pd(sp, z, kS1);
    __m256d siny = _mm256_fmadd_pd(_mm256_mul_pd(y, z), sp, y);

    // cos(y) = 1 - z/2 + z^2 (C1 + z (C2 + ...))
    __m256d cp = kC6;
    cp = _mm256_fmadd_pd(cp, z, kC5);
    cp = _mm256_fmadd_pd(cp, z, kC4);
    cp = _mm256_fmadd_pd(cp, z, kC3);
    cp = _mm256_fmadd_pd(cp, z, kC2);
    cp = _mm256_fmadd_pd(cp, z, kC1);
    __m256d cosy = _mm256_fmadd_pd(_mm256_mul_pd(z, z), cp,
                                   _mm256_fnmadd_pd(z, _mm256_set1_pd(0.5), _mm256_set1_pd(1.0)));

    // Quadrant selection from the low two bits of fn.
    __m128i q32 = _mm256_cvtpd_epi32(fn);
    __m256i q = _mm256_cvtepi32_epi64(q32);
    __m256i bit0 = _mm256_and_si256(q, _mm256_set1_epi64x(1));
    __m256i bit1 = _mm256_and_si256(q, _mm256_set1_epi64x(2));
    __m256d swap = _mm256_castsi256_pd(
        _mm256_cmpeq_epi64(bit0, _mm256_set1_epi64x(1)));  // odd quadrant: sin<->cos
    __m256d neg_s = _mm256_castsi256_pd(
        _mm256_cmpeq_epi64(bit1, _mm256_set1_epi64x(2)));  // quadrants 2,3: negate sin
    // cos negates in quadrants 1,2: bit1 of (q+1).
    __m256i q1 = _mm256_add_epi64(q, _mm256_set1_epi64x(1));
    __m256d neg_c = _mm256_castsi256_pd(
        _mm256_cmpeq_epi64(_mm256_and_si256(q1, _mm256_set1_epi64x(2)), _mm256_set1_epi64x(2)));

    __m256d s = _mm256_blendv_pd(siny, cosy, swap);
    __m256d c = _mm256_blendv_pd(cosy, siny, swap);
    s = _mm256_xor_pd(s, _mm256_and_pd(neg_s, kSignMask));
    c = _mm256_xor_pd(c, _mm256_and_pd(neg_c, kSignMask));
    return {s, c};
}

inline __m256d sinc4(__m256d x) {
    __m256d s = _mm256_div_pd(sincos4(x).s, x);
    __m256d zero = _mm256_cmp_pd(x, _mm256_setzero_pd(), _CMP_EQ_OQ);
    return _mm256_blendv_pd(s, _mm256_set1_pd(1.0), zero);
}

// exp(u) for u <= 0 (arguments are -t^2): Cody-Waite ln2 reduction plus a
// degree-12 Taylor kernel on |r| <= ln2/2.
const __m256d kInvLn2 = _mm256_set1_pd(1.44269504088896338700e+00);
const __m256d kLn2Hi = _mm256_set1_pd(6.93147180369123816490e-01);
const __m256d kLn2Lo = _mm256_set1_pd(1.90821492927058770002e-10);

inline __m256d exp_nonpos4(__m256d u) {
    __m256d underflow = _mm256_cmp_pd(u, _mm256_set1_pd(-708.0), _CMP_LT_OQ);
    u = _mm256_max_pd(u, _mm256_set1_pd(-708.0));
    __m256d fn = _mm256_round_pd(_mm256_mul_pd(u, kInvLn2),
                                 _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(fn, kLn2Hi, u);
    r = _mm256_fnmadd_pd(fn, kLn2Lo, r);

    __m256d p = _mm256_set1_pd(1.0 / 479001600.0);  // 1/12!
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 39916800.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 3628800.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 362880.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 40320.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 5040.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 720.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 120.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 24.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 6.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(0.5));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));

    // 2^fn via exponent bits; fn in [-1022, 0] here.
    __m256i n = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(fn));
    __m256i ebits = _mm256_slli_epi64(_mm256_add_epi64(n, _mm256_set1_epi64x(1023)), 52);
    __m256d scale = _mm256_castsi256_pd(ebits);
    __m256d out = _mm256_mul_pd(p, scale);
    return _mm256_andnot_pd(underflow, out);
}

void sinc_avx2(const double* x, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, sinc4(_mm256_loadu_pd(x + i)));
    for (; i < n; ++i) out[i] = x[i] == 0.0 ? 1.0 : std::sin(x[i]) / x[i];
}

void sinc_mag2_avx2(const double* x, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d s = sinc4(_mm256_loadu_pd(x + i));
        _mm256_storeu_pd(out + i, _mm256_mul_pd(s, s));
    }
    for (; i < n; ++i) {
        double s = x[i] == 0.0 ? 1.0 : std::sin(x[i]) / x[i];
        out[i] = s * s;
    }
}

void sinc_phase_avx2(const double* x, double* re, double* im, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d xv = _mm256_loadu_pd(x + i);
        SinCos sc = sincos4(xv);
        __m256d s = _mm256_div_pd(sc.s, xv);
        __m256d zero = _mm256_cmp_pd(xv, _mm256_setzero_pd(), _CMP_EQ_OQ);
        s = _mm256_blendv_pd(s, _mm256_set1_pd(1.0), zero);
        _mm256_storeu_pd(re + i, _mm256_mul_pd(s, sc.c));
        _mm256_storeu_pd(im + i, _mm256_mul_pd(s, sc.s));
    }
    for (; i < n; ++i) {
        double s = x[i] == 0.0 ? 1.0 : std::sin(x[i]) / x[i];
        re[i] = s * std::cos(x[i]);
        im[i] = s * std::sin(x[i]);
    }
}

void exp_neg_sq_avx2(const double* t, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d tv = _mm256_loadu_pd(t + i);
        __m256d u = _mm256_xor_pd(_mm256_mul_pd(tv, tv), kSignMask);
        _mm256_storeu_pd(out + i, exp_nonpos4(u));
    }
    for (; i < n; ++i) out[i] = std::exp(-t[i] * t[i]);
}

void mag2_avx2(const double* re, const double* im, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d r = _mm256_loadu_pd(re + i);
        __m256d m = _mm256_loadu_pd(im + i);
        _mm256_storeu_pd(out + i, _mm256_fmadd_pd(r, r, _mm256_mul_pd(m, m)));
    }
    for (; i < n; ++i) out[i] = re[i] * re[i] + im[i] * im[i];
}

}  // namespace

const Backend* avx2_backend() {
    static const Backend b{"avx2", sinc_avx2, sinc_mag2_avx2, sinc_phase_avx2,
                           exp_neg_sq_avx2, mag2_avx2};
    return &b;
}

}  // namespace qpm::kernels

#else

namespace qpm::kernels {
const Backend* avx2_backend() { return nullptr; }
}  // namespace qpm::kernels

#endif
