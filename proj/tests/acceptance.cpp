// Acceptance gate: one line per criterion, exit 0 iff all pass.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "sglab/suites.hpp"
#include "sglab/verify.hpp"

using namespace sglab;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int n, bool pass, const std::string& desc) {
    std::printf("criterion %d: %s - %s\n", n, pass ? "PASS" : "FAIL", desc.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

SpectralModel ou_model(std::size_t M) {
    std::vector<double> lam(M);
    for (std::size_t k = 1; k <= M; ++k) lam[k - 1] = static_cast<double>(k);
    return SpectralModel(lam);
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i)
        g[i] = lo * std::pow(hi / lo, n == 1 ? 0.0 : static_cast<double>(i) / (n - 1));
    return g;
}

// --- 1: optimal gradient bound over >= 20 cases ---------------------------

void criterion1() {
    auto t0 = Clock::now();
    struct Case {
        const SpectralModel* model;
        CylFunction f;
        HVec z;
        double lambda;
    };
    SpectralModel ou = ou_model(8);
    SpectralModel bu = make_burgers1d_model(32);
    SpectralModel ch = make_cahnhilliard3d_model(3);
    const SpectralModel* models[3] = {&ou, &bu, &ch};

    double worst = 0.0;
    int n_cases = 0;
    bool all = true;
    for (const SpectralModel* m : models) {
        std::vector<CylFunction> fs = {
            make_cosine({1}, {1.0}),
            make_cosine({2}, {1.6}),
            make_indicator_smooth({1}, 0.5),
            make_tanh_product({1, 2}, {1.0, 0.7}),
        };
        for (double lambda : {1.0, 2.5}) {
            HVec z(m->M(), 0.0);
            z[0] = lambda > 1.0 ? 0.3 : 0.0;
            for (const CylFunction& f : fs) {
                BoundReport br = verify_optimal_bound(*m, lambda, z, {f}, 1e-2, 16);
                worst = std::max(worst, br.max_ratio);
                all = all && br.pass;
                ++n_cases;
            }
        }
    }
    double dt = seconds_since(t0);
    bool pass = all && n_cases >= 20 && worst <= std::numbers::pi / std::sqrt(2.0) + 1e-2 &&
                dt <= 300.0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "optimal bound, %d cases, max ratio %.4f <= %.4f, %.0fs", n_cases, worst,
                  std::numbers::pi / std::sqrt(2.0) + 1e-2, dt);
    report(1, pass, buf);
}

// --- 2: increment bound and saturating slope ------------------------------

void criterion2() {
    SpectralModel m = ou_model(8);
    Constants c = m.derive_constants();
    HVec z(8, 0.0);
    auto s_grid = log_grid(1e-3, 1.0, 7);
    IncrementReport smooth =
        verify_increment_bound(m, 1.0, z, make_cosine({1}, {1.0}), s_grid, {}, 5e-2);
    IncrementReport sat =
        verify_increment_bound(m, 1.0, z, make_indicator_smooth({1}, 0.5), s_grid, {}, 5e-2);
    bool pass = smooth.max_ratio <= c.c2 + 5e-2 && sat.max_ratio <= c.c2 + 5e-2 &&
                sat.slope >= 0.4;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "increment ratio max %.3f <= C2+5e-2 = %.3f, saturating slope %.2f >= 0.4",
                  std::max(smooth.max_ratio, sat.max_ratio), c.c2 + 5e-2, sat.slope);
    report(2, pass, buf);
}

// --- 3: constant oracle ---------------------------------------------------

void criterion3() {
    SpectralModel m = ou_model(8);
    Constants c = m.derive_constants();
    double grid_max = 0.0;
    for (int i = 1; i <= 400000; ++i) {
        double u = 1e-7 + i * (6.0 / 400000);
        grid_max = std::max(grid_max, std::sqrt(2.0) * u * std::exp(-u * u) /
                                          std::sqrt(1.0 - std::exp(-2.0 * u * u)));
    }
    bool c1_ok = std::abs(c.c1 - 1.0) <= 1e-5 && std::abs(c.c1 - grid_max) <= 1e-5;
    bool grid_ok = true;
    for (double t : log_grid(1e-6, 10.0, 60)) {
        auto lt = m.lambda_t(t);
        double mx = 0.0;
        for (double v : lt) mx = std::max(mx, v);
        if (mx * std::sqrt(t) > c.c1 + 1e-10) grid_ok = false;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "C1 = %.7f vs oracle %.7f (1e-5), lambda_t sqrt(t) <= C1 on 60-point grid",
                  c.c1, grid_max);
    report(3, c1_ok && grid_ok, buf);
}

// --- 4: gradient formula vs finite differences and MC ---------------------

void criterion4() {
    SpectralModel m = ou_model(8);
    HVec z(8, 0.0);
    z[1] = 0.2;
    std::vector<CylFunction> fs = {make_cosine({1, 2}, {1.0, 0.7}),
                                   make_gaussian_bump({1}, {0.3}, 0.8),
                                   make_tanh_product({1, 2}, {1.0, 1.0})};
    double worst_rel = 0.0;
    for (const CylFunction& f : fs) {
        auto battery = sup_battery(m, f.active_coords(), 8);
        for (double t : {0.1, 1.0}) {
            for (const HVec& x : battery) {
                for (int k : f.active_coords()) {
                    HVec h = basis_vec(8, k);
                    double d = dpt_apply(m, t, z, f, x, h).value;
                    double eps = 1e-5 * (1.0 + std::abs(x[k - 1]));
                    HVec xp = x + eps * h, xm = x + (-eps) * h;
                    double fd = (pt_apply(m, t, z, f, xp).value -
                                 pt_apply(m, t, z, f, xm).value) /
                                (2.0 * eps);
                    double rel = std::abs(d - fd) / std::max(std::abs(fd), 1e-3);
                    worst_rel = std::max(worst_rel, rel);
                }
            }
        }
    }
    // MC mode at N = 1e6 within 3 sigma of the quadrature value
    CylFunction f = make_cosine({1}, {1.0});
    HVec x(8, 0.0);
    x[0] = 0.4;
    HVec e1 = basis_vec(8, 1);
    double exact = dpt_apply(m, 0.5, z, f, x, e1).value;
    Estimate mc = dpt_apply(m, 0.5, z, f, x, e1, EvalMethod::montecarlo({424242, 0}, 1000000));
    bool mc_ok = mc.sigma > 0.0 && std::abs(mc.value - exact) <= 3.0 * mc.sigma;
    bool pass = worst_rel <= 1e-4 && mc_ok;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "gradient vs FD rel err %.2e <= 1e-4; MC N=1e6 |dev| = %.2f sigma",
                  worst_rel, mc.sigma > 0 ? std::abs(mc.value - exact) / mc.sigma : 99.0);
    report(4, pass, buf);
}

// --- 5: exact-law simulation ----------------------------------------------

void criterion5() {
    SpectralModel m = ou_model(16);
    SimSpec spec;
    spec.T = 5.0;
    spec.dt = 1e-2;
    spec.m = 16;
    spec.n_paths = 10000;
    spec.seed = {90211, 0};
    spec.x0 = HVec(16, 0.0);
    for (std::size_t k = 0; k < 16; ++k) spec.x0[k] = 0.3 / (1.0 + static_cast<double>(k));
    spec.snapshot_times = {0.1, 1.0, 5.0};
    PathEnsemble e = simulate(m, make_zero_drift(16), spec);
    bool all = true;
    double worst = 0.0;
    for (std::size_t ti = 0; ti < 3; ++ti) {
        double t = spec.snapshot_times[ti];
        auto q = m.covariance_qt(t);
        for (std::size_t k = 0; k < 16; ++k) {
            double mean = std::exp(-m.lambda(k + 1) * t) * spec.x0[k];
            double sd = std::sqrt(q[k]);
            KsResult ks = ks_one_sample(
                e.coord_samples(ti, k),
                [&](double v) { return normal_cdf((v - mean) / sd); }, 0.01);
            all = all && ks.pass;
            worst = std::max(worst, ks.statistic / ks.critical);
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "zero-drift KS, 16 coords x 3 times, N=1e4, worst stat/critical %.2f", worst);
    report(5, all, buf);
}

// --- 6: fixed-point contraction and bounds --------------------------------

void criterion6() {
    SpectralModel m = ou_model(8);
    HVec z(8, 0.0);
    z[0] = 0.2;
    z[2] = -0.1;
    DriftPtr F = make_near_constant_drift(z, {1}, {0.2});  // sup|F - z| = 0.2
    CylFunction g = make_cosine({1}, {1.3});
    FixedPointState st = fixed_point_solve(m, 1.0, z, F, g, {});
    bool contract = st.iterations >= 2;
    for (std::size_t i = 2; i < st.update_norms.size(); ++i)
        if (st.update_norms[i - 1] > 1e-14 &&
            st.update_norms[i] > 0.8 * st.update_norms[i - 1] + 1e-14)
            contract = false;
    bool bounds = st.sup_u <= 4.0 * g.sup_norm() + 1e-9 &&
                  st.sup_sqrtA_grad <= 12.0 * g.sup_norm() + 1e-9;
    bool pass = contract && bounds && st.residual <= 1e-3;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "picard: %d iters, residual %.2e <= 1e-3, sup u %.3f, sup sqrtA grad %.3f",
                  st.iterations, st.residual, st.sup_u, st.sup_sqrtA_grad);
    report(6, pass, buf);
}

// --- 7: Laplace cross-check on 16 pipeline cases --------------------------

void criterion7() {
    auto t0 = Clock::now();
    SpectralModel ou1 = ou_model(1);
    SpectralModel ou2 = ou_model(2);
    SpectralModel ou4 = ou_model(4);
    SpectralModel bu = make_burgers1d_model(4);
    SpectralModel ch = make_cahnhilliard3d_model(1);

    struct Case {
        const SpectralModel* m;
        std::size_t sim_m;
        double lambda;
        double zval;
        double amp;
        CylFunction f;
        double x1;
    };
    std::vector<Case> cases;
    int ci = 0;
    for (const SpectralModel* m :
         {&ou1, &ou1, &ou1, &ou1, &ou2, &ou2, &ou2, &ou4, &ou4, &ou4, &bu, &bu, &bu, &ch, &ch,
          &ch}) {
        double lambdas[4] = {1.0, 1.5, 2.0, 3.0};
        double zvals[4] = {0.0, 0.2, -0.15, 0.1};
        double amps[4] = {0.15, 0.1, 0.2, 0.12};
        CylFunction f = (ci % 3 == 0) ? make_cosine({1}, {1.0 + 0.2 * (ci % 4)})
                                      : (ci % 3 == 1 ? make_indicator_smooth({1}, 1.0)
                                                     : make_gaussian_bump({1}, {0.0}, 1.0));
        cases.push_back({m, std::min<std::size_t>(m->M(), 2), lambdas[ci % 4], zvals[ci % 4],
                         amps[ci % 4], f, 0.3 - 0.1 * (ci % 3)});
        ++ci;
    }

    bool all = true;
    double worst_margin = 1e9;
    int idx = 0;
    for (const Case& c : cases) {
        HVec z(c.m->M(), 0.0);
        z[0] = c.zval;
        DriftPtr F = make_near_constant_drift(z, {1}, {c.amp});
        HVec x(c.m->M(), 0.0);
        x[0] = c.x1;
        CrosscheckSim sim;
        sim.dt = 1e-2;
        sim.m = c.sim_m;
        sim.n_paths = 100000;
        sim.seed = {4000u + static_cast<std::uint64_t>(idx), 0};
        CrosscheckResult r = laplace_crosscheck(*c.m, c.lambda, z, F, c.f, x, sim);
        all = all && r.pass;
        worst_margin = std::min(worst_margin, r.budget - r.residual);
        ++idx;
    }
    double dt = seconds_since(t0);
    bool pass = all && dt <= 900.0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "laplace cross-check, 16 cases, N=1e5, min budget margin %.2e, %.0fs",
                  worst_margin, dt);
    report(7, pass, buf);
}

// --- 8: uniqueness suite --------------------------------------------------

void criterion8() {
    ExperimentConfig cfg;
    cfg.model.family = "burgers1d";
    cfg.model.size = 8;
    cfg.model.h = "linear-clip";
    cfg.model.h_params = {0.5};
    cfg.n_paths = 10000;
    cfg.times = {0.25, 0.5, 1.0};
    cfg.level = 0.01;
    cfg.T = 1.0;
    cfg.dt = 1e-2;
    cfg.m = 8;
    cfg.seed = 2024;
    cfg.x0 = {0.3, -0.1};
    SuiteResult r = run_suite("uniqueness", cfg);
    report(8, r.pass,
           "two constructions + mollified n=64 pass marginal KS at 1% Bonferroni, N=1e4");
}

// --- 9: truncation sweep --------------------------------------------------

void criterion9() {
    SpectralModel m = ou_model(8);
    HVec z(8, 0.0);
    CylFunction f = make_cosine({1}, {1.0});
    DriftPtr F = make_near_constant_drift(z, {1}, {0.2});
    HVec x(8, 0.0);
    x[0] = 0.3;
    std::vector<int> ns = {1, 4, 16, 64};
    std::vector<double> vals;
    bool uniform = true;
    for (int n : ns) {
        TruncatedSolution s = truncated_solution(m, 2.0, n, 1, f, F, x, {257, -1.0}, z);
        vals.push_back(s.value);
        if (std::abs(s.value) > 12.0 * f.sup_norm()) uniform = false;
    }
    bool cauchy = true;
    double prev = 1e9;
    for (std::size_t i = 1; i < vals.size(); ++i) {
        double d = std::abs(vals[i] - vals[i - 1]);
        if (d > prev + 1e-12) cauchy = false;
        prev = d;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "truncation sweep n in {1,4,16,64}: cauchy diffs %.1e, %.1e, %.1e monotone",
                  std::abs(vals[1] - vals[0]), std::abs(vals[2] - vals[1]),
                  std::abs(vals[3] - vals[2]));
    report(9, cauchy && uniform, buf);
}

// --- 10: zygmund bound and kink calibration -------------------------------

void criterion10() {
    SpectralModel m = ou_model(8);
    Constants c = m.derive_constants();
    double c1 = 16.0 * (c.c1 * c.c1 + 1.0) * (c.c2 + 1.0);
    CylFunction f = make_cosine({1}, {1.2});
    ResolventField field = tabulate_resolvent(m, 1.0, HVec(8, 0.0), f, {});
    std::vector<HVec> batt = sup_battery(m, {1}, 16);
    ZygmundReport r =
        zygmund_seminorm(m, field, {0.05, 0.1, 0.2}, batt, f.sup_norm());
    bool bound_ok = r.pass && std::abs(r.c1 - c1) <= 1e-9 && r.max_ratio <= c1 * f.sup_norm();

    std::vector<CylFunction> kink = {make_abs_clip({1}, 10.0)};
    std::vector<HVec> origin = {HVec(8, 0.0)};
    ZygmundReport k = zygmund_seminorm(m, {1}, kink, {0.05, 0.1, 0.2}, origin, 10.0);
    bool kink_ok = std::abs(k.max_ratio - 2.0) <= 1e-3;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "zygmund ratio %.3f <= c1 = %.3f; kink calibration %.4f = 2 +- 1e-3",
                  r.max_ratio, c1 * f.sup_norm(), k.max_ratio);
    report(10, bound_ok && kink_ok, buf);
}

// --- 11: byte-identical reports -------------------------------------------

void criterion11() {
    ExperimentConfig cfg;
    cfg.suite = "bounds";
    cfg.n_paths = 500;
    SuiteResult a = run_suite("bounds", cfg);
    SuiteResult b = run_suite("bounds", cfg);
    bool same = a.pass && a.report.dump(2) == b.report.dump(2) && a.files == b.files;
    report(11, same, "re-running a suite with identical config gives byte-identical reports");
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11();
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all 11 criteria passed\n");
    return 0;
}
