#pragma once

#include <cstddef>
#include <string>

// Array kernels for the hot grid fills: phase-matching amplitudes, Gaussian
// envelopes, magnitudes.  A scalar reference implementation always exists;
// an AVX2+FMA variant is selected at runtime when the CPU supports it.
// Variants are equivalence-tested against the scalar reference (see
// tests/test_kernels.cpp for the tolerances).  The qpm results of a given
// binary on a given machine are deterministic: the backend is picked once,
// and can be pinned with the QPM_KERNELS environment variable or force().

namespace qpm::kernels {

struct Backend {
    const char* name;
    // out[i] = sin(x[i])/x[i], with the removable singularity at 0 -> 1.
    void (*sinc)(const double* x, double* out, std::size_t n);
    // out[i] = sinc(x[i])^2.
    void (*sinc_mag2)(const double* x, double* out, std::size_t n);
    // re[i] + i im[i] = sinc(x[i]) * exp(i x[i]).
    void (*sinc_phase)(const double* x, double* re, double* im, std::size_t n);
    // out[i] = exp(-t[i]^2).
    void (*exp_neg_sq)(const double* t, double* out, std::size_t n);
    // out[i] = re[i]^2 + im[i]^2.
    void (*mag2)(const double* re, const double* im, double* out, std::size_t n);
};

const Backend& scalar_backend();
const Backend* avx2_backend();  // nullptr if this build/CPU cannot run it

// Active backend: AVX2 when available unless overridden by QPM_KERNELS
// (values: "scalar", "avx2") or force().
const Backend& active();
void force(const std::string& name);  // throws ConfigError on unknown/unsupported

inline void sinc(const double* x, double* out, std::size_t n) { active().sinc(x, out, n); }
inline void sinc_mag2(const double* x, double* out, std::size_t n) { active().sinc_mag2(x, out, n); }
inline void sinc_phase(const double* x, double* re, double* im, std::size_t n) {
    active().sinc_phase(x, re, im, n);
}
inline void exp_neg_sq(const double* t, double* out, std::size_t n) { active().exp_neg_sq(t, out, n); }
inline void mag2(const double* re, const double* im, double* out, std::size_t n) {
    active().mag2(re, im, out, n);
}

}  // namespace qpm::kernels
