#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "sglab/gaussian.hpp"
#include "sglab/stats.hpp"

using namespace sglab;

namespace {

// deterministic standard-normal sample via inverse-cdf stratification
std::vector<double> normal_grid(int n, double shift = 0.0) {
    std::vector<double> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) out.push_back(normal_icdf((i + 0.5) / n) + shift);
    return out;
}

}  // namespace

TEST_CASE("one-sample ks accepts the true distribution and rejects a shift") {
    auto a = normal_grid(2000);
    auto cdf = [](double x) { return normal_cdf(x); };
    KsResult ok = ks_one_sample(a, cdf, 0.01);
    CHECK(ok.pass);
    CHECK(ok.critical ==
          doctest::Approx(std::sqrt(-std::log(0.005) / 2.0) / std::sqrt(2000.0)).epsilon(1e-12));
    KsResult bad = ks_one_sample(normal_grid(2000, 0.5), cdf, 0.01);
    CHECK_FALSE(bad.pass);
    CHECK(bad.statistic > ok.statistic);
}

TEST_CASE("two-sample ks") {
    auto a = normal_grid(1500);
    auto b = normal_grid(1000);
    KsResult same = ks_two_sample(a, b, 0.01);
    CHECK(same.pass);
    double c = std::sqrt(-std::log(0.005) / 2.0);
    CHECK(same.critical ==
          doctest::Approx(c * std::sqrt((1500.0 + 1000.0) / (1500.0 * 1000.0))).epsilon(1e-12));
    KsResult diff = ks_two_sample(a, normal_grid(1000, 1.0), 0.01);
    CHECK_FALSE(diff.pass);
}

TEST_CASE("energy distance behaves like a metric on samples") {
    auto a = normal_grid(800);
    CHECK(energy_distance(a, a) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    auto b = normal_grid(800, 6.0);
    double e = energy_distance(a, b);
    CHECK(e > 0.0);
    // large separation: 2 E|a-b| - E|a-a'| - E|b-b'| ~ 2 c - 2 * 2/sqrt(pi)
    double oracle = 2.0 * 6.0 - 2.0 * 2.0 / std::sqrt(std::numbers::pi);
    CHECK(e == doctest::Approx(oracle).epsilon(0.05));
    CHECK(energy_distance(a, b) == doctest::Approx(energy_distance(b, a)).epsilon(1e-12));
}

TEST_CASE("energy permutation test separates laws") {
    auto a = normal_grid(400);
    PermutationResult same = energy_permutation_test(a, normal_grid(400), 200);
    CHECK(same.p_value >= 0.2);
    PermutationResult diff = energy_permutation_test(a, normal_grid(400, 1.5), 200);
    CHECK(diff.p_value <= 0.05);
    CHECK(diff.permutations == 200);
    // deterministic under the fixed seed
    PermutationResult again = energy_permutation_test(a, normal_grid(400, 1.5), 200);
    CHECK(again.p_value == diff.p_value);
}
