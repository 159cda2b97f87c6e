#include <cmath>
#include <cstddef>

#include "qpm/kernels.hpp"

// Reference implementations.  Plain libm, one element at a time; the SIMD
// variants are tested against these.

namespace qpm::kernels {

namespace {

inline double sinc1(double x) {
    if (x == 0.0) return 1.0;
    return std::sin(x) / x;
}

void sinc_scalar(const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = sinc1(x[i]);
}

void sinc_mag2_scalar(const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double s = sinc1(x[i]);
        out[i] = s * s;
    }
}

void sinc_phase_scalar(const double* x, double* re, double* im, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double s = sinc1(x[i]);
        re[i] = s * std::cos(x[i]);
        im[i] = s * std::sin(x[i]);
    }
}

void exp_neg_sq_scalar(const double* t, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(-t[i] * t[i]);
}

void mag2_scalar(const double* re, const double* im, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = re[i] * re[i] + im[i] * im[i];
}

}  // namespace

const Backend& scalar_backend() {
    static const Backend b{"scalar", sinc_scalar, sinc_mag2_scalar, sinc_phase_scalar,
                           exp_neg_sq_scalar, mag2_scalar};
    return b;
}

}  // namespace qpm::kernels
