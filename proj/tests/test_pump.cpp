#include <cmath>
#include <vector>

#include "doctest.h"
#include "qpm/error.hpp"
#include "qpm/pump.hpp"

using namespace qpm;

TEST_CASE("gaussian pump: peak 1 at center, 1/e at one sigma") {
    auto p = PumpEnvelope::gaussian(1.0e15, 2.0e12);
    CHECK(p.amplitude(1.0e15) == 1.0);
    CHECK(p.amplitude(1.0e15 + 2.0e12) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(p.amplitude(1.0e15 - 2.0e12) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("rectangular pump: closed interval at the edges") {
    auto p = PumpEnvelope::rectangular(1.0e15, 4.0e12);
    CHECK(p.amplitude(1.0e15) == 1.0);
    CHECK(p.amplitude(1.0e15 + 2.0e12) == 1.0);  // boundary included
    CHECK(p.amplitude(1.0e15 - 2.0e12) == 1.0);
    CHECK(p.amplitude(1.0e15 + 2.0000001e12) == 0.0);
}

TEST_CASE("tabulated pump: peak-normalized linear interpolation, zero outside") {
    auto p = PumpEnvelope::tabulated({1.0, 2.0, 3.0}, {0.0, 4.0, 0.0});
    CHECK(p.amplitude(2.0) == 1.0);
    CHECK(p.amplitude(1.5) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(p.amplitude(0.5) == 0.0);
    CHECK(p.amplitude(3.5) == 0.0);
    CHECK(p.center() == 2.0);
}

TEST_CASE("pump invariants") {
    CHECK_THROWS_AS(PumpEnvelope::gaussian(1.0, 0.0), ConfigError);
    CHECK_THROWS_AS(PumpEnvelope::rectangular(1.0, -1.0), ConfigError);
    CHECK_THROWS_AS(PumpEnvelope::tabulated({1.0, 1.0}, {1.0, 1.0}), ConfigError);
    CHECK_THROWS_AS(PumpEnvelope::tabulated({1.0, 2.0}, {1.0, -1.0}), ConfigError);
    CHECK_THROWS_AS(PumpEnvelope::tabulated({1.0, 2.0}, {0.0, 0.0}), ConfigError);
}

TEST_CASE("vectorized amplitudes match scalar evaluation") {
    auto p = PumpEnvelope::gaussian(5.0e14, 1.0e12);
    std::vector<double> w(257), got(257);
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = 5.0e14 + (static_cast<double>(k) - 128.0) * 3e10;
    p.amplitudes(w.data(), got.data(), w.size());
    for (std::size_t k = 0; k < w.size(); ++k)
        CHECK(got[k] == doctest::Approx(p.amplitude(w[k])).epsilon(1e-13));
}
