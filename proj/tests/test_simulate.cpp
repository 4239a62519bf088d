#include <cmath>

#include "doctest.h"
#include "sglab/gaussian.hpp"
#include "sglab/simulate.hpp"
#include "sglab/stats.hpp"

using namespace sglab;

namespace {

SpectralModel ou2() { return SpectralModel({1.0, 3.0}); }

SimSpec base_spec() {
    SimSpec s;
    s.T = 1.0;
    s.dt = 1e-2;
    s.m = 2;
    s.n_paths = 4000;
    s.seed = {777, 0};
    s.x0 = {0.5, -0.25};
    s.snapshot_times = {0.5, 1.0};
    return s;
}

}  // namespace

TEST_CASE("scheme names round trip") {
    CHECK(scheme_from_name(scheme_name(Scheme::factorization_check)) ==
          Scheme::factorization_check);
    CHECK_THROWS_AS(scheme_from_name("nope"), std::invalid_argument);
}

TEST_CASE("zero-drift exponential euler reproduces the gaussian marginal") {
    SpectralModel m = ou2();
    PathEnsemble e = simulate(m, make_zero_drift(2), base_spec());
    REQUIRE(e.times.size() == 2);
    auto q = m.covariance_qt(1.0);
    for (std::size_t k = 0; k < 2; ++k) {
        double mean = std::exp(-m.lambda(k + 1) * 1.0) * base_spec().x0[k];
        double sd = std::sqrt(q[k]);
        auto samples = e.coord_samples(1, k);
        KsResult ks = ks_one_sample(
            samples, [&](double x) { return normal_cdf((x - mean) / sd); }, 0.01);
        CHECK(ks.pass);
        double s1 = 0.0;
        for (double v : samples) s1 += v;
        s1 /= samples.size();
        CHECK(std::abs(s1 - mean) <= 4.0 * sd / std::sqrt((double)samples.size()));
    }
}

TEST_CASE("simulation is deterministic in the seed") {
    SpectralModel m = ou2();
    PathEnsemble a = simulate(m, make_zero_drift(2), base_spec());
    PathEnsemble b = simulate(m, make_zero_drift(2), base_spec());
    CHECK(a.data == b.data);
    SimSpec s2 = base_spec();
    s2.seed.stream_id += 1;
    PathEnsemble c = simulate(m, make_zero_drift(2), s2);
    CHECK(a.data != c.data);
    // path i of the base run is path 0 of a run whose stream starts at i
    SimSpec one = base_spec();
    one.n_paths = 1;
    one.seed.stream_id += 3;
    PathEnsemble d = simulate(m, make_zero_drift(2), one);
    CHECK(a.state(3, 1) == d.state(0, 1));
}

TEST_CASE("moment probe matches the closed-form second moment") {
    SpectralModel m = ou2();
    SimSpec s = base_spec();
    s.n_paths = 20000;
    PathEnsemble e = simulate(m, make_zero_drift(2), s);
    MomentTable mt = moment_probe(e, 2);
    auto q1 = m.covariance_qt(0.5);
    double oracle = 0.0;
    for (std::size_t k = 0; k < 2; ++k) {
        double mean = std::exp(-m.lambda(k + 1) * 0.5) * s.x0[k];
        oracle += mean * mean + q1[k];
    }
    CHECK(std::abs(mt.moment[0] - oracle) <= 3.0 * mt.sigma[0]);
    CHECK(mt.sup_moment >= mt.moment[0]);
}

TEST_CASE("g_alpha with alpha = 1 on a constant integrand") {
    SpectralModel m = ou2();
    double dt = 1e-3, T = 0.8;
    std::vector<double> t_grid;
    int n = static_cast<int>(std::round(T / dt));
    std::vector<HVec> f_mid(n, HVec{0.7, -0.4});
    for (int j = 1; j <= n; ++j) t_grid.push_back(j * dt);
    auto out = g_alpha_apply(m, 1.0, f_mid, dt, t_grid);
    HVec v = {0.7, -0.4};
    for (std::size_t k = 0; k < 2; ++k) {
        double l = m.lambda(k + 1);
        double oracle = v[k] * (1.0 - std::exp(-l * T)) / l;
        CHECK(out.back()[k] == doctest::Approx(oracle).epsilon(5e-3));
    }
}

TEST_CASE("factorization route reproduces the stochastic convolution variance") {
    SpectralModel m = ou2();
    SimSpec s = base_spec();
    s.scheme = Scheme::factorization_check;
    s.x0 = {0.0, 0.0};
    s.n_paths = 8000;
    s.snapshot_times = {1.0};
    PathEnsemble e = simulate(m, make_zero_drift(2), s);
    auto q = m.covariance_qt(1.0);
    for (std::size_t k = 0; k < 2; ++k) {
        auto samples = e.coord_samples(0, k);
        double s2 = 0.0;
        for (double v : samples) s2 += v * v;
        s2 /= samples.size();
        double tol = 4.0 * q[k] * std::sqrt(2.0 / samples.size()) + 0.05 * q[k];
        CHECK(std::abs(s2 - q[k]) <= tol);
    }
}

TEST_CASE("exit times respect the level ordering") {
    SpectralModel m = ou2();
    SimSpec s = base_spec();
    s.tau_levels = {1e-9, 1e6};
    s.n_paths = 16;
    PathEnsemble e = simulate(m, make_zero_drift(2), s);
    for (std::size_t i = 0; i < s.n_paths; ++i) {
        CHECK(e.tau[i][0] <= e.tau[i][1]);
        CHECK(e.tau[i][0] <= s.dt + 1e-12);       // |x0| > 0 hits immediately
        CHECK(e.tau[i][1] == s.T + s.dt);          // never reaches 1e6
    }
}

TEST_CASE("girsanov reweighting onto a constant extra drift") {
    SpectralModel m = SpectralModel({1.0});
    SimSpec s;
    s.T = 1.0;
    s.dt = 1e-2;
    s.m = 1;
    s.n_paths = 30000;
    s.seed = {31337, 0};
    s.x0 = {0.2};
    s.snapshot_times = {1.0};
    PathEnsemble e = simulate(m, make_zero_drift(1), s);
    double b = 0.4;
    GirsanovReport gr = girsanov_weight(m, e, [b](double, const HVec&) { return HVec{b}; });
    CHECK(gr.flagged == 0);
    CHECK(std::abs(gr.mean_weight - 1.0) <= 4.0 * gr.sigma_mean);
    double sigma = 0.0;
    double wm = gr.weighted_mean(e.coord_samples(0, 0), &sigma);
    double oracle = std::exp(-1.0) * 0.2 + b * (1.0 - std::exp(-1.0));
    CHECK(std::abs(wm - oracle) <= 4.0 * sigma + 2e-3);
}

TEST_CASE("novikov probe is finite and at least one") {
    SpectralModel m = ou2();
    SimSpec s = base_spec();
    s.n_paths = 500;
    PathEnsemble e = simulate(m, make_zero_drift(2), s);
    NovikovProbe p = novikov_probe(m, e);
    CHECK(std::isfinite(p.mean));
    CHECK(p.mean >= 1.0);
}
