#include <cmath>
#include <numbers>

#include "doctest.h"
#include "sglab/spectral_model.hpp"

using namespace sglab;

namespace {
SpectralModel ou8() {
    std::vector<double> lam(8);
    for (int k = 1; k <= 8; ++k) lam[k - 1] = k;
    return SpectralModel(lam);
}
}  // namespace

TEST_CASE("diagonal calculus closed forms at lambda_1 = 1, t = 1") {
    SpectralModel m = ou8();
    const double e1 = std::exp(-1.0), e2 = std::exp(-2.0);
    CHECK(m.covariance_qt(1.0)[0] == doctest::Approx((1.0 - e2) / 2.0).epsilon(1e-14));
    CHECK(m.lambda_t(1.0)[0] ==
          doctest::Approx(std::sqrt(2.0) * e1 / std::sqrt(1.0 - e2)).epsilon(1e-14));
    HVec z(8, 0.0);
    z[0] = 1.0;
    CHECK(m.gamma_t(1.0, z)[0] == doctest::Approx(1.0 - e1).epsilon(1e-14));
    CHECK(m.qt_invsqrt_gamma_norm(1.0) <= std::sqrt(2.0) + 1e-14);
    CHECK(m.invariant_covariance()[3] == doctest::Approx(1.0 / 8.0));
    double tr = 0.0;
    for (int k = 1; k <= 8; ++k) tr += 1.0 / k;
    CHECK(m.partial_trace_inv() == doctest::Approx(tr));
}

TEST_CASE("operator identities across the spectrum") {
    SpectralModel m = ou8();
    for (double t : {0.05, 0.3, 1.0, 4.0}) {
        auto l = m.lambda_t(t);
        auto q = m.covariance_qt(t);
        for (std::size_t k = 1; k <= m.M(); ++k) {
            // Lambda_t sqrt(Q_t) = e^{tA} exactly
            CHECK(l[k - 1] * std::sqrt(q[k - 1]) ==
                  doctest::Approx(std::exp(-m.lambda(k) * t)).epsilon(1e-13));
        }
        // Q_{t+s} = Q_s + e^{2sA} Q_t
        auto qs = m.covariance_qt(0.2);
        auto qts = m.covariance_qt(t + 0.2);
        for (std::size_t k = 1; k <= m.M(); ++k)
            CHECK(qts[k - 1] == doctest::Approx(qs[k - 1] + std::exp(-2.0 * m.lambda(k) * 0.2) *
                                                                q[k - 1])
                                    .epsilon(1e-13));
    }
    // semigroup property and fractional powers
    HVec x(8, 1.0);
    HVec a = m.semigroup_apply(0.7, m.semigroup_apply(0.3, x));
    HVec b = m.semigroup_apply(1.0, x);
    for (std::size_t k = 0; k < 8; ++k) CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-14));
    HVec c = m.frac_power_apply(0.5, m.frac_power_apply(-0.5, x));
    for (std::size_t k = 0; k < 8; ++k) CHECK(c[k] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(m.smoothing_norm(0.5) ==
          doctest::Approx(std::sqrt(1.0) * std::exp(-0.5)).epsilon(1e-12));
}

TEST_CASE("constants against the independent maximization oracle") {
    SpectralModel m = ou8();
    Constants c = m.derive_constants();
    // C1 = sqrt(2) sup_u u e^{-u^2} (1 - e^{-2u^2})^{-1/2}; the sup is the
    // u -> 0 limit, equal to 1
    double grid_max = 0.0;
    for (int i = 1; i <= 200000; ++i) {
        double u = 1e-6 + i * (5.0 / 200000);
        grid_max = std::max(grid_max, std::sqrt(2.0) * u * std::exp(-u * u) /
                                          std::sqrt(1.0 - std::exp(-2.0 * u * u)));
    }
    CHECK(c.c1 == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(grid_max <= c.c1 + 1e-6);
    const double pi = std::numbers::pi;
    CHECK(c.c2 == doctest::Approx(std::sqrt(2.0) * pi * std::sqrt(2.0) + 4.0 * c.c1)
                      .epsilon(1e-12));  // omega = 1 here
    CHECK(c.pi_over_sqrt2 == doctest::Approx(pi / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(m.omega() == doctest::Approx(1.0));
}

TEST_CASE("model families") {
    SpectralModel b = make_burgers1d_model(6);
    for (std::size_t k = 1; k <= 6; ++k)
        CHECK(b.lambda(k) == doctest::Approx(static_cast<double>(k * k)));

    SpectralModel ch = make_cahnhilliard3d_model(2);
    auto idx = cahnhilliard3d_indices(2);
    CHECK(ch.M() == 26);  // 3^3 - 1
    CHECK(idx.size() == ch.M());
    CHECK(ch.lambda(1) == doctest::Approx(1.0));  // |(1,0,0)|^4
    double prev = 0.0;
    for (std::size_t k = 1; k <= ch.M(); ++k) {
        auto [k1, k2, k3] = idx[k - 1];
        double n2 = k1 * k1 + k2 * k2 + k3 * k3;
        CHECK(ch.lambda(k) == doctest::Approx(n2 * n2));
        CHECK(ch.lambda(k) >= prev);
        prev = ch.lambda(k);
    }

    SpectralModel h = make_h01burgers_model(5);
    for (std::size_t k = 1; k <= 5; ++k)
        CHECK(h.lambda(k) == doctest::Approx(static_cast<double>(k * k)));

    CHECK_THROWS_AS(SpectralModel({1.0, -2.0}), std::invalid_argument);
    CHECK_THROWS_AS(make_model_by_family("nope", 4), std::invalid_argument);
}
