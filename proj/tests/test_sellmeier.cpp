#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "qpm/error.hpp"

using namespace qpm;

namespace {

// Independent long-double evaluation of the published formula, written
// without the library's code path.
long double n_reference(long double lam, const SellmeierSet& s) {
    const long double l2 = lam * lam;
    long double n2 = s.A - static_cast<long double>(s.D) * l2;
    for (const auto& t : s.terms)
        n2 += static_cast<long double>(t.B) * l2 / (l2 - static_cast<long double>(t.C));
    return std::sqrt(n2);
}

}  // namespace

TEST_CASE("refractive index matches an independent high-precision evaluation") {
    const auto& d = test::ktp();
    std::mt19937 gen(42);
    std::uniform_real_distribution<double> lam(0.45, 2.9);
    for (int k = 0; k < 200; ++k) {
        const double l = lam(gen);
        for (const SellmeierSet* s : {&d.y, &d.z}) {
            const double got = s->index(l);
            const double want = static_cast<double>(n_reference(l, *s));
            CHECK(std::abs(got - want) / want < 1e-12);
        }
    }
}

TEST_CASE("refractive index is deterministic") {
    const auto& d = test::ktp();
    CHECK(d.y.index(1.58) == d.y.index(1.58));
    CHECK(d.z.index(0.79) == d.z.index(0.79));
}

TEST_CASE("out-of-range wavelengths are rejected with the axis named") {
    const auto& d = test::ktp();
    CHECK_THROWS_AS(d.y.index(0.2), RangeError);
    CHECK_THROWS_AS(d.z.index(5.0), RangeError);
    try {
        d.z.index(5.0);
    } catch (const RangeError& e) {
        CHECK(std::string(e.what()).find("Z") != std::string::npos);
    }
}

TEST_CASE("n is real, > 1 and continuous over the full valid range") {
    const auto& d = test::ktp();
    for (const SellmeierSet* s : {&d.y, &d.z}) {
        double prev = 0.0;
        for (int k = 0; k <= 1000; ++k) {
            const double l =
                s->lambda_min_um + (s->lambda_max_um - s->lambda_min_um) * k / 1000.0;
            const double n = s->index(l);
            CHECK(std::isfinite(n));
            CHECK(n > 1.0);
            if (k > 0) CHECK(std::abs(n - prev) < 5e-3);  // no jumps on a 2.6 nm grid
            prev = n;
        }
    }
}

TEST_CASE("known KTP index values") {
    // flux-grown KTP at 1.064 um: n_y ~ 1.7454, n_z ~ 1.8297
    const auto& d = test::ktp();
    CHECK(d.y.index(1.064) == doctest::Approx(1.7454).epsilon(5e-4));
    CHECK(d.z.index(1.064) == doctest::Approx(1.8297).epsilon(5e-4));
}

TEST_CASE("constant stub has zero derivative") {
    auto s = SellmeierSet::constant(1.5);
    CHECK(s.index(1.0) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(s.index_derivative(1.0) == 0.0);
}

TEST_CASE("malformed Sellmeier files are rejected") {
    CHECK_THROWS_AS(parse_sellmeier_json("not json"), ConfigError);
    CHECK_THROWS_AS(parse_sellmeier_json(R"({"axes":{}})"), ConfigError);
    // declared range must keep n real and > 1
    CHECK_THROWS_AS(parse_sellmeier_json(R"({
        "axes": {
          "Y": {"A": 0.5, "valid_range_um": [0.5, 2.0]},
          "Z": {"A": 4.0, "valid_range_um": [0.5, 2.0]}
        }})"),
                    ConfigError);
}
