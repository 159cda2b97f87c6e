#pragma once

#include <cstdint>

namespace qpm {

// Counter-based deterministic random numbers.  Every draw is a pure hash of
// (seed, index, counter), so any grid point of a scan can be re-sampled
// independently and in any order, on any thread, with identical results.

// SplitMix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t keyed_u64(std::uint64_t seed, std::uint64_t index, std::uint64_t counter) {
    return mix64(mix64(mix64(seed) ^ index) ^ counter);
}

// Uniform in (0, 1); never returns 0 or 1.
inline double keyed_uniform(std::uint64_t seed, std::uint64_t index, std::uint64_t counter) {
    return (static_cast<double>(keyed_u64(seed, index, counter) >> 11) + 0.5) * 0x1.0p-53;
}

// Standard normal via Box-Muller on two keyed uniforms.
double keyed_normal(std::uint64_t seed, std::uint64_t index, std::uint64_t counter);

// Poisson(mean) keyed on (seed, index): multiplicative inversion for small
// means, Hoermann's PTRS transformed rejection for mean >= 10.
std::uint64_t poisson_sample(double mean, std::uint64_t seed, std::uint64_t index);

}  // namespace qpm
