#include "sglab/kolmogorov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sglab {

namespace {

HVec expand(const HVec& z, std::size_t M) {
    HVec out(M, 0.0);
    for (std::size_t k = 0; k < z.size() && k < M; ++k) out[k] = z[k];
    return out;
}

HVec embed_active(const SpectralModel& model, const std::vector<int>& active,
                  std::span<const double> y) {
    HVec x(model.M(), 0.0);
    for (std::size_t j = 0; j < active.size(); ++j)
        x[static_cast<std::size_t>(active[j]) - 1] = y[j];
    return x;
}

// One resolvent evaluation with a fixed time rule; gradient components
// are returned per active coordinate of f when grads != nullptr.
double resolvent_with_rule(const SpectralModel& model, const HVec& z, const CylFunction& f,
                           const HVec& x, const LaplaceRule& rule, const EvalMethod& method,
                           double* grads) {
    double value = 0.0;
    const auto& active = f.active_coords();
    std::vector<HVec> units;
    if (grads) {
        for (int k : active) units.push_back(basis_vec(model.M(), k));
        for (std::size_t a = 0; a < active.size(); ++a) grads[a] = 0.0;
    }
    for (const auto& [t, w] : rule.nodes) {
        value += w * pt_apply(model, t, z, f, x, method).value;
        if (grads)
            for (std::size_t a = 0; a < active.size(); ++a)
                grads[a] += w * dpt_apply(model, t, z, f, x, units[a], method).value;
    }
    return value;
}

// Per-axis interpolation stencil of one smoothing pass: node i maps to
// scale * x_i + shift + sd * xi_q, resolved against the axis grid with
// clamping.  c0/c1 carry the Gauss-Hermite weight.
struct SmoothTab {
    std::vector<int> i0;
    std::vector<double> c0, c1, xi;
    int q = 0;
};

SmoothTab make_smooth_tab(const GridAxis& ax, double scale, double shift, double sd,
                          const QuadratureRule& gh) {
    SmoothTab tab;
    tab.q = gh.order;
    tab.i0.resize(static_cast<std::size_t>(ax.n) * gh.order);
    tab.c0.resize(tab.i0.size());
    tab.c1.resize(tab.i0.size());
    tab.xi = gh.nodes;
    const double h = ax.spacing();
    for (int i = 0; i < ax.n; ++i) {
        double base = scale * ax.coord(i) + shift;
        for (int qq = 0; qq < gh.order; ++qq) {
            double arg = std::clamp(base + sd * gh.nodes[qq], ax.lo, ax.hi);
            int j = std::min(static_cast<int>((arg - ax.lo) / h), ax.n - 2);
            double frac = (arg - ax.coord(j)) / h;
            std::size_t at = static_cast<std::size_t>(i) * gh.order + qq;
            tab.i0[at] = j;
            tab.c0[at] = gh.weights[qq] * (1.0 - frac);
            tab.c1[at] = gh.weights[qq] * frac;
        }
    }
    return tab;
}

// One smoothing pass along axis d of a (up to 3-D) tensor table.
// xi_weight inserts the xi factor of the gradient representation.
void smooth_axis(std::vector<double>& v, const std::vector<int>& sizes, int d,
                 const SmoothTab& tab, bool xi_weight, std::vector<double>& line,
                 std::vector<double>& out) {
    const int dim = static_cast<int>(sizes.size());
    int n = sizes[d];
    std::size_t stride = 1;
    for (int e = dim - 1; e > d; --e) stride *= static_cast<std::size_t>(sizes[e]);
    std::size_t block = stride * static_cast<std::size_t>(n);
    std::size_t total = 1;
    for (int e = 0; e < dim; ++e) total *= static_cast<std::size_t>(sizes[e]);
    line.resize(static_cast<std::size_t>(n));
    out.resize(static_cast<std::size_t>(n));
    for (std::size_t base = 0; base < total; base += block) {
        for (std::size_t off = 0; off < stride; ++off) {
            double* p = v.data() + base + off;
            for (int i = 0; i < n; ++i) line[static_cast<std::size_t>(i)] = p[i * stride];
            for (int i = 0; i < n; ++i) {
                const std::size_t at0 = static_cast<std::size_t>(i) * tab.q;
                double acc = 0.0;
                if (xi_weight) {
                    for (int qq = 0; qq < tab.q; ++qq) {
                        std::size_t at = at0 + qq;
                        int j = tab.i0[at];
                        acc += tab.xi[qq] *
                               (tab.c0[at] * line[j] + tab.c1[at] * line[j + 1]);
                    }
                } else {
                    for (int qq = 0; qq < tab.q; ++qq) {
                        std::size_t at = at0 + qq;
                        int j = tab.i0[at];
                        acc += tab.c0[at] * line[j] + tab.c1[at] * line[j + 1];
                    }
                }
                out[static_cast<std::size_t>(i)] = acc;
            }
            for (int i = 0; i < n; ++i) p[i * stride] = out[static_cast<std::size_t>(i)];
        }
    }
}

// Laplace-transform accumulation over the whole grid at once: for each time
// node, P_t acts on the tensor interpolant by sequential per-axis smoothing,
// so the cost is linear in the node count instead of exponential in the
// number of active coordinates.  grads (when present) receives the raw
// gradient per active axis via the Lambda_t representation of D P_t.
void laplace_grid(const SpectralModel& model, const std::vector<int>& active,
                  const std::vector<GridAxis>& axes, const HVec& zz,
                  const std::vector<double>& ftab, const LaplaceRule& rule, int gh_order,
                  std::vector<double>& value, std::vector<std::vector<double>>* grads) {
    const int dim = static_cast<int>(active.size());
    std::vector<int> sizes(static_cast<std::size_t>(dim));
    for (int d = 0; d < dim; ++d) sizes[static_cast<std::size_t>(d)] = axes[d].n;
    QuadratureRule gh = gauss_hermite(gh_order);
    value.assign(ftab.size(), 0.0);
    if (grads) grads->assign(active.size(), std::vector<double>(ftab.size(), 0.0));
    std::vector<double> tmp, line, out;
    std::vector<SmoothTab> tabs(static_cast<std::size_t>(dim));
    for (const auto& [t, w] : rule.nodes) {
        HVec gam = model.gamma_t(t, zz);
        std::vector<double> qt = model.covariance_qt(t);
        std::vector<double> lt = model.lambda_t(t);
        for (int d = 0; d < dim; ++d) {
            std::size_t k = static_cast<std::size_t>(active[d]) - 1;
            tabs[static_cast<std::size_t>(d)] =
                make_smooth_tab(axes[d], std::exp(-model.lambda(active[d]) * t), gam[k],
                                std::sqrt(qt[k]), gh);
        }
        for (int g = -1; g < (grads ? dim : 0); ++g) {
            tmp = ftab;
            for (int d = 0; d < dim; ++d)
                smooth_axis(tmp, sizes, d, tabs[static_cast<std::size_t>(d)], d == g, line, out);
            if (g < 0) {
                for (std::size_t i = 0; i < tmp.size(); ++i) value[i] += w * tmp[i];
            } else {
                double lam = lt[static_cast<std::size_t>(active[g]) - 1];
                auto& gd = (*grads)[static_cast<std::size_t>(g)];
                for (std::size_t i = 0; i < tmp.size(); ++i) gd[i] += w * lam * tmp[i];
            }
        }
    }
}

}  // namespace

LaplaceRule laplace_rule(double lambda, int panels, int order) {
    if (!(lambda > 0.0)) throw std::invalid_argument("laplace_rule: lambda must be positive");
    LaplaceRule rule;
    rule.t_cut = 40.0 / lambda;
    rule.tail_factor = std::exp(-lambda * rule.t_cut) / lambda;
    const double tau_max = std::sqrt(rule.t_cut);
    // geometric panel boundaries in tau, finest near 0
    std::vector<double> b;
    b.push_back(0.0);
    for (int j = panels - 1; j >= 0; --j) b.push_back(tau_max * std::pow(0.5, j));
    for (std::size_t p = 0; p + 1 < b.size(); ++p) {
        QuadratureRule gl = gauss_legendre(order, b[p], b[p + 1]);
        for (int i = 0; i < gl.order; ++i) {
            double tau = gl.nodes[i];
            double t = tau * tau;
            rule.nodes.emplace_back(t, gl.weights[i] * 2.0 * tau * std::exp(-lambda * t));
        }
    }
    return rule;
}

ResolventResult resolvent(const SpectralModel& model, double lambda, const HVec& z,
                          const CylFunction& f, const HVec& x, const EvalMethod& method) {
    if (!(lambda > 0.0)) throw std::invalid_argument("resolvent: lambda must be positive");
    HVec zz = expand(z, model.M());
    // panel doubling on the value until stable
    double prev = 0.0, value = 0.0, diff = 0.0;
    LaplaceRule rule;
    for (int panels : {12, 24, 48}) {
        rule = laplace_rule(lambda, panels);
        value = resolvent_with_rule(model, zz, f, x, rule, method, nullptr);
        diff = std::abs(value - prev);
        prev = value;
        if (panels > 12 && diff < 1e-8) break;
    }
    ResolventResult res;
    res.lambda = lambda;
    const auto& active = f.active_coords();
    std::vector<double> g(active.size(), 0.0);
    res.value = resolvent_with_rule(model, zz, f, x, rule, method, g.data());
    res.gradient.assign(model.M(), 0.0);
    res.sqrtA_gradient.assign(model.M(), 0.0);
    for (std::size_t a = 0; a < active.size(); ++a) {
        std::size_t k = static_cast<std::size_t>(active[a]) - 1;
        res.gradient[k] = g[a];
        res.sqrtA_gradient[k] = std::sqrt(model.lambda(active[a])) * g[a];
    }
    res.quad_error = diff + rule.tail_factor * f.sup_norm();
    return res;
}

double default_half_width(const SpectralModel& model) {
    double smax = 0.0;
    for (double s : model.invariant_covariance()) smax = std::max(smax, s);
    return 6.0 * std::sqrt(smax);
}

std::vector<GridAxis> make_axes(const SpectralModel& model, const std::vector<int>& active,
                                const GridSpec& spec) {
    double L = spec.half_width > 0.0 ? spec.half_width : default_half_width(model);
    std::vector<GridAxis> axes;
    for (std::size_t j = 0; j < active.size(); ++j) axes.push_back({-L, L, spec.points_per_axis});
    return axes;
}

ResolventField tabulate_resolvent(const SpectralModel& model, double lambda, const HVec& z,
                                  const CylFunction& f, const GridSpec& spec,
                                  const EvalMethod& method) {
    HVec zz = expand(z, model.M());
    const auto& active = f.active_coords();
    auto axes = make_axes(model, active, spec);
    LaplaceRule rule = laplace_rule(lambda);
    ResolventField field;
    field.active = active;
    field.value = GridFn(axes);
    for (std::size_t a = 0; a < active.size(); ++a) field.sqrtA_grad.emplace_back(axes);
    field.quad_error = rule.tail_factor * f.sup_norm();

    GridFn ftab = GridFn::tabulate(axes, [&](std::span<const double> y) { return f.value(y); });
    std::vector<double> value;
    std::vector<std::vector<double>> grads;
    int order = method.order > 0 ? method.order : kDefaultGhOrder;
    laplace_grid(model, active, axes, zz, ftab.values(), rule, order, value, &grads);
    field.value.values() = std::move(value);
    for (std::size_t a = 0; a < active.size(); ++a) {
        double s = std::sqrt(model.lambda(active[a]));
        auto& vals = field.sqrtA_grad[a].values();
        for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = s * grads[a][i];
    }
    return field;
}

BoundReport verify_optimal_bound(const SpectralModel& model, double lambda, const HVec& z,
                                 const std::vector<CylFunction>& f_battery, double tolerance,
                                 int battery_points, double shift_s) {
    if (f_battery.empty()) throw std::invalid_argument("verify_optimal_bound: empty battery");
    BoundReport rep;
    rep.bound = model.derive_constants().pi_over_sqrt2;
    HVec zz = expand(z, model.M());
    LaplaceRule rule = laplace_rule(lambda);
    for (const auto& f : f_battery) {
        if (!(f.sup_norm() > 0.0)) continue;
        auto battery = sup_battery(model, f.active_coords(), battery_points);
        std::vector<double> g(f.active_coords().size());
        for (const auto& x : battery) {
            resolvent_with_rule(model, zz, f, x, rule, {}, g.data());
            double s2 = 0.0;
            for (std::size_t a = 0; a < g.size(); ++a)
                s2 += model.lambda(f.active_coords()[a]) * g[a] * g[a];
            rep.max_ratio = std::max(rep.max_ratio, std::sqrt(s2) / f.sup_norm());
            // shifted variant with s > 0 along h = e_k:
            // |int e^{-lambda t} D_h P_{t+s} f dt| <= pi/sqrt2 ||f||_0 |(-A)^{-1/2} e^{sA} h|
            for (std::size_t a = 0; a < g.size(); ++a) {
                int k = f.active_coords()[a];
                double lk = model.lambda(k);
                double lhs = 0.0;
                for (const auto& [t, w] : rule.nodes)
                    lhs += w * dpt_apply(model, t + shift_s, zz, f, x,
                                         basis_vec(model.M(), k))
                                   .value;
                double rhs_scale = std::exp(-shift_s * lk) / std::sqrt(lk);
                rep.shifted_max_ratio = std::max(
                    rep.shifted_max_ratio, std::abs(lhs) / (f.sup_norm() * rhs_scale));
            }
        }
    }
    rep.pass = rep.max_ratio <= rep.bound + tolerance &&
               rep.shifted_max_ratio <= rep.bound + tolerance;
    return rep;
}

IncrementReport verify_increment_bound(const SpectralModel& model, double lambda, const HVec& z,
                                       const CylFunction& f, const std::vector<double>& s_grid,
                                       const GridSpec& spec, double tolerance,
                                       int battery_points) {
    for (double s : s_grid)
        if (s < 0.0 || s > 1.0)
            throw std::invalid_argument("verify_increment_bound: s grid must lie in [0,1]");
    HVec zz = expand(z, model.M());
    ResolventField field = tabulate_resolvent(model, lambda, zz, f, spec);
    const auto& active = field.active;
    // raw gradient components D_k u as grid-backed cylindrical functions
    std::vector<CylFunction> comps;
    for (std::size_t a = 0; a < active.size(); ++a) {
        GridFn raw = field.sqrtA_grad[a];
        double scale = 1.0 / std::sqrt(model.lambda(active[a]));
        for (double& v : raw.values()) v *= scale;
        comps.push_back(make_grid_cyl(active, std::move(raw)));
    }
    auto battery = sup_battery(model, active, battery_points);
    Constants c = model.derive_constants();
    IncrementReport rep;
    for (double s : s_grid) {
        double worst = 0.0;
        for (const auto& x : battery) {
            double inc2 = 0.0;
            for (const auto& comp : comps) {
                double moved = s == 0.0 ? comp.value_at(x) : pt_apply(model, s, zz, comp, x).value;
                double d = moved - comp.value_at(x);
                inc2 += d * d;
            }
            worst = std::max(worst, std::sqrt(inc2));
        }
        double ratio = s == 0.0 ? 0.0 : worst / (std::sqrt(s) * f.sup_norm());
        rep.ratio_by_s.emplace_back(s, ratio);
        rep.max_ratio = std::max(rep.max_ratio, ratio);
    }
    // slope of the raw increment (not the ratio) on the available decades
    std::vector<std::pair<double, double>> raw;
    for (const auto& [s, r] : rep.ratio_by_s)
        if (s > 0.0 && r > 0.0) raw.emplace_back(s, r * std::sqrt(s) * f.sup_norm());
    if (raw.size() >= 2)
        rep.slope = loglog_slope(raw, raw.front().first, raw.back().first);
    rep.pass = rep.max_ratio <= c.c2 + tolerance;
    return rep;
}

double resolvent_identity_check(const SpectralModel& model, double lambda, double mu,
                                const HVec& z, const CylFunction& f,
                                const std::vector<HVec>& x_battery, const GridSpec& spec) {
    if (!(lambda > 0.0) || !(mu > 0.0) || lambda == mu)
        throw std::invalid_argument("resolvent_identity_check: need lambda, mu > 0, distinct");
    HVec zz = expand(z, model.M());
    // v = R(lambda) f tabulated, then fed back through R(mu)
    ResolventField vf = tabulate_resolvent(model, lambda, zz, f, spec);
    CylFunction v = make_grid_cyl(vf.active, vf.value, f.sup_norm() / lambda);
    double max_resid = 0.0;
    for (const auto& x : x_battery) {
        double rmu = resolvent(model, mu, zz, f, x).value;
        double rlam = resolvent(model, lambda, zz, f, x).value;
        double rcomp = resolvent(model, mu, zz, v, x).value;
        double resid = (rmu - rlam) - (lambda - mu) * rcomp;
        max_resid = std::max(max_resid, std::abs(resid));
    }
    return max_resid;
}

double generator_apply(const SpectralModel& model, const CylFunction& f, const HVec& z,
                       const HVec& x) {
    if (!f.has_second_derivatives())
        throw std::invalid_argument("generator_apply: f must have closed-form second derivatives");
    HVec zz = expand(z, model.M());
    double y[3];
    f.extract(x, y);
    std::span<const double> ys(y, f.active_coords().size());
    double acc = 0.0;
    for (int a = 0; a < f.n_active(); ++a) {
        int k = f.active_coords()[a];
        double lk = model.lambda(k);
        double xk = static_cast<std::size_t>(k) <= x.size() ? x[k - 1] : 0.0;
        acc += 0.5 * f.deriv2(a, a, ys);
        acc -= lk * xk * f.deriv(a, ys);
        acc += std::sqrt(lk) * zz[k - 1] * f.deriv(a, ys);
    }
    return acc;
}

double generator_residual_check(const SpectralModel& model, double lambda, const HVec& z,
                                const CylFunction& f, const std::vector<HVec>& x_battery,
                                const GridSpec& spec) {
    HVec zz = expand(z, model.M());
    ResolventField field = tabulate_resolvent(model, lambda, zz, f, spec);
    const auto& active = field.active;
    const auto& axes = field.value.axes();
    const int dim = field.value.dim();
    double max_resid = 0.0;
    for (const auto& x : x_battery) {
        // snap to the nearest interior grid node so the FD stencil applies
        int idx[3] = {0, 0, 0};
        double y[3] = {0, 0, 0};
        for (int d = 0; d < dim; ++d) {
            double xv = x[static_cast<std::size_t>(active[d]) - 1];
            int i = static_cast<int>(std::lround((xv - axes[d].lo) / axes[d].spacing()));
            idx[d] = std::clamp(i, 1, axes[d].n - 2);
            y[d] = axes[d].coord(idx[d]);
        }
        double u0 = field.value.at(idx[0], idx[1], idx[2]);
        double Lu = 0.0;
        for (int d = 0; d < dim; ++d) {
            double hstep = axes[d].spacing();
            int ip[3] = {idx[0], idx[1], idx[2]}, im[3] = {idx[0], idx[1], idx[2]};
            ip[d] += 1;
            im[d] -= 1;
            double up = field.value.at(ip[0], ip[1], ip[2]);
            double um = field.value.at(im[0], im[1], im[2]);
            double d1 = (up - um) / (2.0 * hstep);
            double d2 = (up - 2.0 * u0 + um) / (hstep * hstep);
            int k = active[d];
            double lk = model.lambda(k);
            Lu += 0.5 * d2 - lk * y[d] * d1 + std::sqrt(lk) * zz[k - 1] * d1;
        }
        double fv = f.value(std::span<const double>(y, dim));
        max_resid = std::max(max_resid, std::abs(lambda * u0 - Lu - fv));
    }
    return max_resid;
}

FixedPointState fixed_point_solve(const SpectralModel& model, double lambda, const HVec& z,
                                  const DriftPtr& F, const CylFunction& g, const GridSpec& spec,
                                  double tol, int max_iter, const EvalMethod& method) {
    if (!(lambda >= 1.0)) throw std::invalid_argument("fixed_point_solve: lambda must be >= 1");
    HVec zz = expand(z, model.M());
    const auto& active = g.active_coords();
    const auto* fa = F->active();
    if (!fa)
        throw std::invalid_argument(
            "fixed_point_solve: drift must be cylindrical (finitely many active coordinates)");
    {
        // coordinates where F - z actually varies must live on g's grid;
        // coordinates carried only by the constant part z are harmless
        HVec f0 = F->eval(HVec(model.M(), 0.0));
        for (int k : *fa) {
            if (std::find(active.begin(), active.end(), k) != active.end()) continue;
            std::size_t i = static_cast<std::size_t>(k) - 1;
            HVec probe(model.M(), 0.0);
            probe[i] = 1.0;
            HVec f1 = F->eval(probe);
            if (std::abs(f0[i] - zz[i]) > 1e-12 || std::abs(f1[i] - zz[i]) > 1e-12)
                throw std::invalid_argument(
                    "fixed_point_solve: drift active coordinates must be shared with g");
        }
    }
    double delta;
    if (auto d = F->sup_dist(zz)) {
        delta = *d;
    } else {
        delta = 0.0;
        auto pts = sup_battery(model, active, 128);
        for (const auto& x : pts) delta = std::max(delta, norm(F->eval(x) - zz));
    }
    if (!(delta < 0.25))
        throw std::invalid_argument(
            "fixed_point_solve: precondition sup_x |F(x) - z|_H < 1/4 violated (got " +
            std::to_string(delta) + ")");

    auto axes = make_axes(model, active, spec);
    LaplaceRule rule = laplace_rule(lambda);
    FixedPointState st;
    st.active = active;
    st.u = GridFn(axes);
    for (std::size_t a = 0; a < active.size(); ++a) st.sqrtA_grad.emplace_back(axes);

    const int dim = static_cast<int>(active.size());
    std::vector<double> sqrt_l(active.size());
    for (std::size_t a = 0; a < active.size(); ++a) sqrt_l[a] = std::sqrt(model.lambda(active[a]));

    // (F - z)_a tabulated once on the same axes; the Picard right-hand side
    // then only interpolates, which keeps mollified drifts affordable
    auto fgrids = std::make_shared<std::vector<GridFn>>();
    {
        const int dim0 = static_cast<int>(active.size());
        for (std::size_t a = 0; a < active.size(); ++a) fgrids->emplace_back(axes);
        int idx[3] = {0, 0, 0};
        auto visit = [&](auto&& self, int d) -> void {
            if (d == dim0) {
                double y[3];
                for (int q = 0; q < dim0; ++q) y[q] = axes[q].coord(idx[q]);
                HVec x = embed_active(model, active, std::span<const double>(y, dim0));
                HVec fx = F->eval(x);
                for (std::size_t a = 0; a < active.size(); ++a) {
                    std::size_t k = static_cast<std::size_t>(active[a]) - 1;
                    (*fgrids)[a].at(idx[0], idx[1], idx[2]) = fx[k] - zz[k];
                }
                return;
            }
            for (idx[d] = 0; idx[d] < axes[d].n; ++idx[d]) self(self, d + 1);
        };
        visit(visit, 0);
    }

    auto make_psi = [&](const std::vector<GridFn>& grad) {
        double psup = g.sup_norm();
        for (const auto& gr : grad) psup += 0.25 * gr.max_abs();
        auto gradc = std::make_shared<std::vector<GridFn>>(grad);
        return CylFunction(active, psup, "picard-rhs",
                           [gradc, fgrids, &g](std::span<const double> y) {
                               double v = g.value(y);
                               for (std::size_t a = 0; a < gradc->size(); ++a)
                                   v += (*fgrids)[a](y) * (*gradc)[a](y);
                               return v;
                           });
    };

    const int gh_order = method.order > 0 ? method.order : kDefaultGhOrder;
    double resid = 0.0;
    for (int iter = 0; iter < max_iter; ++iter) {
        CylFunction psi = make_psi(st.sqrtA_grad);
        GridFn psi_tab =
            GridFn::tabulate(axes, [&](std::span<const double> y) { return psi.value(y); });
        std::vector<double> uvals;
        std::vector<std::vector<double>> gvals;
        laplace_grid(model, active, axes, zz, psi_tab.values(), rule, gh_order, uvals, &gvals);
        GridFn new_u(axes);
        new_u.values() = std::move(uvals);
        std::vector<GridFn> new_grad;
        for (std::size_t a = 0; a < active.size(); ++a) {
            new_grad.emplace_back(axes);
            auto& vals = new_grad.back().values();
            for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = sqrt_l[a] * gvals[a][i];
        }

        // E-norm of the update: sup |du| + sup |(-A)^{1/2} D du|
        double du = 0.0, dg = 0.0;
        for (std::size_t i = 0; i < new_u.values().size(); ++i) {
            du = std::max(du, std::abs(new_u.values()[i] - st.u.values()[i]));
            double s2 = 0.0;
            for (std::size_t a = 0; a < active.size(); ++a) {
                double d = new_grad[a].values()[i] - st.sqrtA_grad[a].values()[i];
                s2 += d * d;
            }
            dg = std::max(dg, std::sqrt(s2));
        }
        resid = du;
        st.u = std::move(new_u);
        st.sqrtA_grad = std::move(new_grad);
        st.update_norms.push_back(du + dg);
        st.iterations = iter + 1;
        if (du + dg < tol) break;
    }
    st.residual = resid;
    st.sup_u = st.u.max_abs();
    double sg = 0.0;
    for (std::size_t i = 0; i < st.u.values().size(); ++i) {
        double s2 = 0.0;
        for (std::size_t a = 0; a < active.size(); ++a) {
            double d = st.sqrtA_grad[a].values()[i];
            s2 += d * d;
        }
        sg = std::max(sg, std::sqrt(s2));
    }
    st.sup_sqrtA_grad = sg;
    return st;
}

TruncatedSolution truncated_solution(const SpectralModel& model, double lambda, int n,
                                     std::size_t m, const CylFunction& f, const DriftPtr& F,
                                     const HVec& x, const GridSpec& spec, const HVec& z) {
    if (m < 1 || m > model.M())
        throw std::invalid_argument("truncated_solution: m out of range");
    for (int k : f.active_coords())
        if (static_cast<std::size_t>(k) > m)
            throw std::invalid_argument(
                "truncated_solution: f active coordinates must lie within the truncation");
    DriftPtr Fn = mollify_drift(model, F, n);
    DriftPtr Fnm = make_projected_drift(Fn, m);
    HVec zm = project(expand(z, model.M()), m);
    FixedPointState st = fixed_point_solve(model, lambda, zm, Fnm, f, spec);
    double y[3];
    HVec xm = project(x, m);
    f.extract(xm, y);
    TruncatedSolution out;
    out.value = st.u(std::span<const double>(y, f.active_coords().size()));
    out.state = std::move(st);
    return out;
}

}  // namespace sglab
