#include <cmath>

#include "doctest.h"
#include "sglab/gaussian.hpp"
#include "sglab/quadrature.hpp"
#include "sglab/rng.hpp"

using namespace sglab;

TEST_CASE("gauss-hermite moments are exact") {
    QuadratureRule gh = gauss_hermite(8);
    double s0 = 0.0, s2 = 0.0, s4 = 0.0, s6 = 0.0;
    for (int i = 0; i < gh.order; ++i) {
        double x = gh.nodes[i], w = gh.weights[i];
        s0 += w;
        s2 += w * x * x;
        s4 += w * x * x * x * x;
        s6 += w * std::pow(x, 6);
    }
    CHECK(s0 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s2 == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(s4 == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(s6 == doctest::Approx(15.0).epsilon(1e-12));
}

TEST_CASE("gauss-legendre polynomial exactness") {
    QuadratureRule gl = gauss_legendre(4, 0.0, 2.0);
    double s = 0.0;
    for (int i = 0; i < gl.order; ++i) s += gl.weights[i] * std::pow(gl.nodes[i], 5);
    CHECK(s == doctest::Approx(64.0 / 6.0).epsilon(1e-13));  // int_0^2 x^5 dx
}

TEST_CASE("tensor quadrature over diagonal gaussians") {
    std::vector<double> cov = {0.5, 2.0};
    double v = gh_integrate(2, cov, [](std::span<const double> y) {
        return y[0] * y[0] * y[1] * y[1] + y[0] + 3.0;
    });
    CHECK(v == doctest::Approx(0.5 * 2.0 + 3.0).epsilon(1e-13));

    std::vector<double> cov3 = {1.0, 0.3, 0.7};
    double v3 = gh_integrate(3, cov3, [](std::span<const double> y) {
        return y[0] * y[0] + y[1] * y[1] * y[2] * y[2];
    });
    CHECK(v3 == doctest::Approx(1.0 + 0.3 * 0.7).epsilon(1e-13));
}

TEST_CASE("gaussian sampler: determinism and worker-split invariance") {
    std::vector<double> cov = {1.0, 0.25};
    auto a = sample_gaussian(cov, {42, 7}, 16);
    auto b = sample_gaussian(cov, {42, 7}, 16);
    CHECK(a == b);
    // draw j of a longer run is draw 0 of a run starting at stream_id + j
    auto shifted = sample_gaussian(cov, {42, 7 + 5}, 1);
    CHECK(a[5] == shifted[0]);

    // second moments within 4 sigma
    auto big = sample_gaussian(cov, {42, 0}, 20000);
    double s2 = 0.0;
    for (const auto& x : big) s2 += x[1] * x[1];
    s2 /= big.size();
    CHECK(std::abs(s2 - 0.25) <= 4.0 * 0.25 * std::sqrt(2.0 / 20000.0));
}

TEST_CASE("normal inverse cdf round trip") {
    for (double x : {-3.5, -1.0, -0.1, 0.0, 0.4, 2.0, 4.0})
        CHECK(normal_icdf(normal_cdf(x)) == doctest::Approx(x).epsilon(1e-10));
    CHECK_THROWS_AS(normal_icdf(0.0), std::domain_error);
}
