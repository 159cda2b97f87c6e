#include <cmath>
#include <vector>

#include "doctest.h"
#include "qpm/error.hpp"
#include "qpm/rng.hpp"

using namespace qpm;

TEST_CASE("keyed draws are pure functions of (seed, index, counter)") {
    CHECK(keyed_u64(1, 2, 3) == keyed_u64(1, 2, 3));
    CHECK(keyed_u64(1, 2, 3) != keyed_u64(1, 2, 4));
    CHECK(keyed_u64(1, 2, 3) != keyed_u64(2, 2, 3));
    const double u = keyed_uniform(7, 11, 0);
    CHECK(u > 0.0);
    CHECK(u < 1.0);
}

TEST_CASE("keyed uniforms look uniform") {
    const int n = 20000;
    double sum = 0.0, sum2 = 0.0;
    for (int k = 0; k < n; ++k) {
        const double u = keyed_uniform(99, static_cast<std::uint64_t>(k), 0);
        sum += u;
        sum2 += u * u;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(std::abs(mean - 0.5) < 4.0 / std::sqrt(12.0 * n));  // ~4 sigma
    CHECK(std::abs(var - 1.0 / 12.0) < 0.01);
}

TEST_CASE("poisson: zero mean, determinism, index independence") {
    CHECK(poisson_sample(0.0, 1, 0) == 0);
    CHECK(poisson_sample(3.7, 42, 5) == poisson_sample(3.7, 42, 5));
    CHECK_THROWS_AS(poisson_sample(-1.0, 1, 0), DomainError);

    // sampling cell 5 does not depend on whether other cells were sampled
    const auto alone = poisson_sample(123.4, 9, 5);
    for (std::uint64_t i = 0; i < 5; ++i) (void)poisson_sample(123.4, 9, i);
    CHECK(poisson_sample(123.4, 9, 5) == alone);
}

TEST_CASE("poisson sample mean within 3 sigma over 1e4 repetitions") {
    for (double mean : {0.5, 4.0, 25.0, 1.0e6}) {
        const int reps = 10000;
        double acc = 0.0;
        for (int r = 0; r < reps; ++r)
            acc += static_cast<double>(poisson_sample(mean, 2024, static_cast<std::uint64_t>(r)));
        const double sample_mean = acc / reps;
        const double tol = 3.0 * std::sqrt(mean / reps);
        CHECK(std::abs(sample_mean - mean) < tol);
    }
}

TEST_CASE("poisson variance is near the mean for a large-mean case") {
    const double mean = 900.0;
    const int reps = 10000;
    double s = 0.0, s2 = 0.0;
    for (int r = 0; r < reps; ++r) {
        const double v = static_cast<double>(poisson_sample(mean, 7, static_cast<std::uint64_t>(r)));
        s += v;
        s2 += v * v;
    }
    const double m = s / reps;
    const double var = s2 / reps - m * m;
    CHECK(std::abs(var - mean) / mean < 0.06);
}
