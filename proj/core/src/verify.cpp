#include "sglab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sglab {

namespace {

std::size_t time_index(const PathEnsemble& e, double t) {
    for (std::size_t i = 0; i < e.times.size(); ++i)
        if (std::abs(e.times[i] - t) < 1e-9) return i;
    throw std::invalid_argument("compare_marginals: time " + std::to_string(t) +
                                " not stored in the ensemble");
}

}  // namespace

LawComparison compare_marginals(const PathEnsemble& a, const PathEnsemble& b,
                                const std::vector<double>& times,
                                const std::vector<CylFunction>& functionals, double level,
                                int energy_perms) {
    if (a.spec.m != b.spec.m)
        throw std::invalid_argument("compare_marginals: Galerkin levels differ");
    if (std::abs(a.spec.T - b.spec.T) > 1e-12)
        throw std::invalid_argument("compare_marginals: horizons differ");
    HVec xa = project(a.spec.x0, a.spec.m), xb = project(b.spec.x0, b.spec.m);
    xa.resize(a.spec.m, 0.0);
    xb.resize(b.spec.m, 0.0);
    if (norm(xa - xb) > 1e-12)
        throw std::invalid_argument("compare_marginals: initial data differ");

    LawComparison cmp;
    cmp.level = level;
    std::size_t n_cells = times.size() * functionals.size();
    cmp.cell_level = level / static_cast<double>(n_cells);
    cmp.pass = true;
    for (double t : times) {
        std::size_t ia = time_index(a, t), ib = time_index(b, t);
        for (const auto& f : functionals) {
            auto eval = [&f](const HVec& x) { return f.value_at(x); };
            std::vector<double> sa = a.functional_samples(ia, eval);
            std::vector<double> sb = b.functional_samples(ib, eval);
            LawCell cell;
            cell.t = t;
            cell.functional = f.shape();
            cell.ks = ks_two_sample(sa, sb, cmp.cell_level);
            PermutationResult perm = energy_permutation_test(sa, sb, energy_perms);
            cell.energy = perm.statistic;
            cell.energy_p = perm.p_value;
            cell.pass = cell.ks.pass && cell.energy_p > cmp.cell_level;
            cmp.pass = cmp.pass && cell.pass;
            cmp.cells.push_back(std::move(cell));
        }
    }
    return cmp;
}

CrosscheckResult laplace_crosscheck(const SpectralModel& model, double lambda, const HVec& z,
                                    const DriftPtr& F, const CylFunction& f, const HVec& x,
                                    const CrosscheckSim& sim, const GridSpec& solver_spec) {
    if (!(lambda >= 1.0)) throw std::invalid_argument("laplace_crosscheck: lambda must be >= 1");

    FixedPointState st = fixed_point_solve(model, lambda, z, F, f, solver_spec);
    double y[3];
    f.extract(x, y);
    CrosscheckResult res;
    res.lhs = st.u(std::span<const double>(y, f.active_coords().size()));
    // grid-interpolation allowance dominates the solver-side error; the time
    // quadrature itself is converged to ~1e-8
    double hgrid = 2.0 * (solver_spec.half_width > 0.0 ? solver_spec.half_width
                                                       : default_half_width(model)) /
                   (solver_spec.points_per_axis - 1);
    res.quad_error = hgrid * hgrid * std::max(1.0, st.sup_u) + 1e-7;

    const double t_cut = sim.t_cut_over_lambda / lambda;
    res.tail = f.sup_norm() * std::exp(-lambda * t_cut) / lambda;

    auto run = [&](double dt) {
        SimSpec spec;
        spec.scheme = Scheme::exponential_euler;
        spec.T = std::max(dt, std::round(t_cut / dt) * dt);
        spec.dt = dt;
        spec.m = sim.m;
        spec.n_paths = sim.n_paths;
        spec.seed = sim.seed;
        spec.x0 = x;
        spec.snapshot_times = {spec.T};  // streaming; keep memory flat
        std::size_t steps = static_cast<std::size_t>(std::llround(spec.T / dt));
        std::vector<double> integral(spec.n_paths, 0.0);
        simulate_stream(model, F, spec,
                        [&](std::size_t path, std::size_t step, double t, const HVec& xs,
                            const HVec&) {
                            double w = (step == 0 || step == steps) ? 0.5 * dt : dt;
                            integral[path] += w * std::exp(-lambda * t) * f.value_at(xs);
                        });
        double s1 = 0.0, s2 = 0.0;
        for (double v : integral) {
            s1 += v;
            s2 += v * v;
        }
        double mean = s1 / spec.n_paths;
        double var = std::max(0.0, s2 / spec.n_paths - mean * mean);
        return std::pair<double, double>(mean, std::sqrt(var / spec.n_paths));
    };

    auto [rhs, sigma] = run(sim.dt);
    auto [rhs_coarse, sigma_c] = run(2.0 * sim.dt);
    res.rhs = rhs;
    res.mc_sigma = sigma;
    res.disc_error = std::abs(rhs - rhs_coarse) + 3.0 * sigma_c;
    res.residual = std::abs(res.lhs - res.rhs);
    res.budget = 3.0 * res.mc_sigma + res.quad_error + res.disc_error + res.tail;
    res.pass = res.residual <= res.budget;
    return res;
}

ZygmundReport zygmund_seminorm(const SpectralModel& model, const std::vector<int>& active,
                               const std::vector<CylFunction>& comps,
                               const std::vector<double>& h_grid,
                               const std::vector<HVec>& x_battery, double f_sup,
                               double tolerance) {
    if (comps.size() != active.size())
        throw std::invalid_argument("zygmund_seminorm: one field component per active coordinate");
    Constants c = model.derive_constants();
    ZygmundReport rep;
    rep.c1 = 16.0 * (c.c1 * c.c1 + 1.0) * (c.c2 + 1.0);
    rep.bound = rep.c1 * f_sup;
    for (const HVec& x : x_battery) {
        for (double h : h_grid) {
            if (!(h > 0.0 && h <= 1.0))
                throw std::invalid_argument("zygmund_seminorm: h must lie in (0, 1]");
            for (std::size_t d = 0; d < active.size(); ++d) {
                HVec xp = x, xm = x;
                std::size_t k = static_cast<std::size_t>(active[d]) - 1;
                if (k >= x.size()) continue;
                xp[k] += h;
                xm[k] -= h;
                double s2 = 0.0;
                for (const auto& comp : comps) {
                    double dd = comp.value_at(xp) - 2.0 * comp.value_at(x) + comp.value_at(xm);
                    s2 += dd * dd;
                }
                double n = std::sqrt(s2);
                rep.max_plain = std::max(rep.max_plain, n);
                rep.max_ratio = std::max(rep.max_ratio, n / h);
            }
        }
    }
    rep.pass = rep.max_ratio <= rep.bound + tolerance;
    return rep;
}

ZygmundReport zygmund_seminorm(const SpectralModel& model, const ResolventField& field,
                               const std::vector<double>& h_grid,
                               const std::vector<HVec>& x_battery, double f_sup,
                               double tolerance) {
    std::vector<CylFunction> comps;
    for (std::size_t a = 0; a < field.active.size(); ++a) {
        GridFn raw = field.sqrtA_grad[a];
        double scale = 1.0 / std::sqrt(model.lambda(field.active[a]));
        for (double& v : raw.values()) v *= scale;
        comps.push_back(make_grid_cyl(field.active, std::move(raw)));
    }
    return zygmund_seminorm(model, field.active, comps, h_grid, x_battery, f_sup, tolerance);
}

DyadicReport dyadic_telescoping_check(const SpectralModel& model, const CylFunction& f,
                                      const std::vector<double>& t_grid,
                                      const std::vector<HVec>& x_battery, double fd_step,
                                      const EvalMethod& method) {
    HVec z(model.M(), 0.0);
    HVec e1 = basis_vec(model.M(), 1);
    DyadicReport rep;
    for (double t : t_grid) {
        double worst = 0.0;
        for (const HVec& x : x_battery) {
            HVec xp = x, xm = x;
            xp[0] += fd_step;
            xm[0] -= fd_step;
            double dp = dpt_apply(model, t, z, f, xp, e1, method).value;
            double dm = dpt_apply(model, t, z, f, xm, e1, method).value;
            worst = std::max(worst, std::abs(dp - dm) / (2.0 * fd_step));
        }
        rep.probe.emplace_back(t, worst);
    }
    double lo = std::max(1e-3, rep.probe.front().first);
    double hi = std::min(1e-1, rep.probe.back().first);
    if (lo < hi) rep.slope = loglog_slope(rep.probe, lo, hi);
    return rep;
}

}  // namespace sglab
