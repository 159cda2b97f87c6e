#include "qpm/rng.hpp"

#include <cmath>

#include "qpm/error.hpp"
#include "qpm/units.hpp"

namespace qpm {

double keyed_normal(std::uint64_t seed, std::uint64_t index, std::uint64_t counter) {
    double u1 = keyed_uniform(seed, index, 2 * counter);
    double u2 = keyed_uniform(seed, index, 2 * counter + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

namespace {

std::uint64_t poisson_inversion(double mean, std::uint64_t seed, std::uint64_t index) {
    const double limit = std::exp(-mean);
    double prod = 1.0;
    std::uint64_t k = 0;
    std::uint64_t draw = 0;
    do {
        prod *= keyed_uniform(seed, index, draw++);
        ++k;
    } while (prod > limit);
    return k - 1;
}

// Hoermann, "The transformed rejection method for generating Poisson random
// variables" (PTRS); valid for mean >= 10.
std::uint64_t poisson_ptrs(double mean, std::uint64_t seed, std::uint64_t index) {
    const double b = 0.931 + 2.53 * std::sqrt(mean);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    const double log_mean = std::log(mean);

    std::uint64_t draw = 0;
    for (int tries = 0; tries < 10000; ++tries) {
        double u = keyed_uniform(seed, index, draw++) - 0.5;
        double v = keyed_uniform(seed, index, draw++);
        double us = 0.5 - std::abs(u);
        double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
        if (kf < 0.0 || (us < 0.013 && v > us)) continue;
        double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
        double rhs = kf * log_mean - mean - std::lgamma(kf + 1.0);
        if (lhs <= rhs) return static_cast<std::uint64_t>(kf);
    }
    throw DomainError("Poisson sampler failed to accept after 10000 tries");
}

}  // namespace

std::uint64_t poisson_sample(double mean, std::uint64_t seed, std::uint64_t index) {
    if (!(mean >= 0.0) || !std::isfinite(mean))
        throw DomainError("Poisson mean must be finite and >= 0");
    if (mean == 0.0) return 0;
    if (mean < 10.0) return poisson_inversion(mean, seed, index);
    return poisson_ptrs(mean, seed, index);
}

}  // namespace qpm
