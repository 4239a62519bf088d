#include <cmath>

#include "doctest.h"
#include "sglab/ou_semigroup.hpp"

using namespace sglab;

namespace {

SpectralModel ou8() {
    std::vector<double> lam(8);
    for (int k = 1; k <= 8; ++k) lam[k - 1] = k;
    return SpectralModel(lam);
}

// closed form for f = cos(a y_1):
// P_t f(x) = e^{-a^2 Q_t / 2} cos(a mu), mu = e^{-l t} x_1 + Gamma_t z_1
double pt_cos_oracle(const SpectralModel& m, double a, double t, double x1, double z1) {
    double q = m.covariance_qt(t)[0];
    double mu = std::exp(-m.lambda(1) * t) * x1 + (1.0 - std::exp(-m.lambda(1) * t)) * z1;
    return std::exp(-0.5 * a * a * q) * std::cos(a * mu);
}

}  // namespace

TEST_CASE("semigroup on cosines matches the gaussian closed form") {
    SpectralModel m = ou8();
    CylFunction f = make_cosine({1}, {1.7});
    for (double t : {0.05, 0.5, 2.0}) {
        for (double x1 : {-1.2, 0.0, 0.8}) {
            HVec x(8, 0.0);
            x[0] = x1;
            HVec z(8, 0.0);
            z[0] = 0.4;
            double v = pt_apply(m, t, z, f, x).value;
            CHECK(v == doctest::Approx(pt_cos_oracle(m, 1.7, t, x1, 0.4)).epsilon(1e-12));
        }
    }
    // t = 0 evaluates f exactly
    HVec x(8, 0.0);
    x[0] = 0.3;
    CHECK(pt_apply(m, 0.0, HVec(8, 0.0), f, x).value ==
          doctest::Approx(std::cos(1.7 * 0.3)).epsilon(1e-15));
}

TEST_CASE("gradient representation: closed form and finite differences") {
    SpectralModel m = ou8();
    CylFunction f = make_cosine({1, 2}, {1.0, 0.7});
    HVec z(8, 0.0);
    z[1] = -0.3;
    HVec e1 = basis_vec(8, 1);
    for (double t : {0.1, 1.0}) {
        for (double x1 : {-0.5, 0.9}) {
            HVec x(8, 0.2);
            x[0] = x1;
            double d = dpt_apply(m, t, z, f, x, e1).value;
            double eps = 1e-5;
            HVec xp = x + eps * e1, xm = x + (-eps) * e1;
            double fd = (pt_apply(m, t, z, f, xp).value - pt_apply(m, t, z, f, xm).value) /
                        (2.0 * eps);
            CHECK(d == doctest::Approx(fd).epsilon(1e-7));
        }
    }
}

TEST_CASE("monte carlo mode agrees with quadrature within its own sigma") {
    SpectralModel m = ou8();
    CylFunction f = make_tanh_product({1, 2}, {1.0, 1.0});
    HVec x(8, 0.0);
    x[0] = 0.5;
    HVec z(8, 0.0);
    double exact = pt_apply(m, 0.7, z, f, x).value;
    Estimate mc = pt_apply(m, 0.7, z, f, x, EvalMethod::montecarlo({99, 0}, 200000));
    CHECK(mc.sigma > 0.0);
    CHECK(std::abs(mc.value - exact) <= 4.0 * mc.sigma);
}

TEST_CASE("mean-zero cancellation of inactive gradient directions") {
    SpectralModel m = ou8();
    CylFunction f = make_cosine({1}, {1.3});
    HVec x(8, 0.1);
    HVec z(8, 0.0);
    // h mixes the active direction with inactive ones; the inactive part
    // integrates to zero, so the derivative equals the e_1 part alone
    HVec h(8, 0.0);
    h[0] = 1.0;
    h[4] = 3.0;
    h[6] = -2.0;
    double d = dpt_apply(m, 0.6, z, f, x, h).value;
    double d1 = dpt_apply(m, 0.6, z, f, x, basis_vec(8, 1)).value;
    CHECK(d == doctest::Approx(d1).epsilon(1e-13));
    // and the naive full-dimensional MC agrees statistically
    Estimate naive = dpt_apply_naive_mc(m, 0.6, z, f, x, h, {7, 0}, 200000);
    CHECK(std::abs(naive.value - d) <= 4.0 * naive.sigma);
}

TEST_CASE("second derivative estimate on the cosine closed form") {
    SpectralModel m = ou8();
    CylFunction f = make_cosine({1}, {1.0});
    HVec x(8, 0.0);
    HVec z(8, 0.0);
    double t = 0.5;
    HVec e1 = basis_vec(8, 1);
    double d2 = d2pt_estimate(m, t, z, f, x, e1, e1);
    double q = m.covariance_qt(t)[0];
    double oracle = -std::exp(-2.0 * m.lambda(1) * t) * std::exp(-0.5 * q);
    CHECK(d2 == doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("sup battery and slope utilities") {
    SpectralModel m = ou8();
    auto batt = sup_battery(m, {1, 3}, 32);
    CHECK(batt.size() == 32);
    double L = 6.0 * std::sqrt(0.5);  // max invariant sd is lambda_1 = 1
    for (const auto& x : batt) {
        CHECK(std::abs(x[0]) <= L + 1e-12);
        CHECK(std::abs(x[2]) <= L + 1e-12);
        CHECK(x[1] == 0.0);  // inactive coordinates untouched
    }
    CHECK(batt == sup_battery(m, {1, 3}, 32));  // deterministic

    std::vector<std::pair<double, double>> tab;
    for (double t : {1e-3, 1e-2, 1e-1, 1.0}) tab.emplace_back(t, 3.0 * std::pow(t, -0.5));
    CHECK(loglog_slope(tab, 1e-3, 1.0) == doctest::Approx(-0.5).epsilon(1e-12));
}
