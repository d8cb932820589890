#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "aggsim/controller.hpp"
#include "oracles.hpp"

using namespace aggsim;

TEST_CASE("wrapped Cauchy density") {
    CHECK(wrapped_cauchy_pdf(0.3, 0.3, 0.5) == doctest::Approx(3.0 / (2.0 * std::numbers::pi)).epsilon(1e-12));
    CHECK(wrapped_cauchy_pdf(0.3, 0.3, 0.5) == doctest::Approx(0.477464829275686).epsilon(1e-12));
    for (double theta : {-3.0, -1.0, 0.0, 2.5})
        CHECK(wrapped_cauchy_pdf(theta, 0.7, 0.0) == doctest::Approx(1.0 / (2.0 * std::numbers::pi)).epsilon(1e-15));

    for (double rho : {0.0, 0.5, 0.9}) {
        const double integral = oracle::simpson([&](double t) { return wrapped_cauchy_pdf(t, 0.0, rho); },
                                                -std::numbers::pi, std::numbers::pi, 20000);
        CHECK(std::abs(integral - 1.0) < 1e-6);
    }
    CHECK_THROWS_AS(wrapped_cauchy_pdf(0.0, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(wrapped_cauchy_pdf(0.0, 0.0, -0.1), std::domain_error);
}

TEST_CASE("sampler output range and symmetry around mu") {
    Rng rng(8);
    for (int i = 0; i < 10000; ++i) {
        const double s = sample_turn_angle(2.0, 0.5, rng);
        CHECK(s >= -std::numbers::pi);
        CHECK(s < std::numbers::pi);
    }
}

TEST_CASE("sampler is uniform at rho = 0") {
    Rng rng(21);
    std::vector<double> samples(100000);
    for (auto& s : samples) s = sample_turn_angle(0.0, 0.0, rng);
    CHECK(oracle::ks_uniform(samples) < oracle::kKs100kAt1Percent);
}

TEST_CASE("sampler concentrates as rho approaches 1") {
    Rng rng(22);
    int close = 0;
    for (int i = 0; i < 100000; ++i) close += std::abs(sample_turn_angle(0.0, 0.999, rng)) < 0.1 ? 1 : 0;
    CHECK(close >= 99000);
}

TEST_CASE("sampler matches the density at rho = 0.5") {
    Rng rng(23);
    std::vector<double> samples(100000);
    for (auto& s : samples) s = sample_turn_angle(0.0, 0.5, rng);
    const double stat = oracle::chi_square(samples, 36, [](double t) { return wrapped_cauchy_pdf(t, 0.0, 0.5); });
    CHECK(stat < oracle::kChiSquare35At1Percent);
}
