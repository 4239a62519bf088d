#include "sglab/ou_semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sglab {

namespace {

struct ActiveData {
    int n = 0;
    double mean[3];    // e^{tA} x + Gamma_t z on active coordinates
    double sd[3];      // Q_t^{1/2}
    double lam[3];     // Lambda_t diagonal
    double ev[3];      // eigenvalues lambda_k
};

ActiveData gather(const SpectralModel& model, double t, const HVec& z, const CylFunction& f,
                  const HVec& x) {
    ActiveData a;
    a.n = f.n_active();
    for (int j = 0; j < a.n; ++j) {
        std::size_t k = static_cast<std::size_t>(f.active_coords()[j]);
        if (k > model.M())
            throw std::invalid_argument("active coordinate beyond model truncation");
        double l = model.lambda(k);
        double xk = k <= x.size() ? x[k - 1] : 0.0;
        double zk = k <= z.size() ? z[k - 1] : 0.0;
        double q = -std::expm1(-2.0 * l * t) / (2.0 * l);
        a.mean[j] = std::exp(-l * t) * xk + (-std::expm1(-l * t)) / std::sqrt(l) * zk;
        a.sd[j] = std::sqrt(q);
        a.lam[j] = std::sqrt(2.0 * l) * std::exp(-t * l) / std::sqrt(-std::expm1(-2.0 * t * l));
        a.ev[j] = l;
    }
    return a;
}

}  // namespace

Estimate pt_apply(const SpectralModel& model, double t, const HVec& z, const CylFunction& f,
                  const HVec& x, const EvalMethod& method) {
    if (t < 0.0) throw std::invalid_argument("pt_apply: t must be nonnegative");
    if (t == 0.0) return {f.value_at(x), 0.0};
    ActiveData a = gather(model, t, z, f, x);
    if (method.kind == EvalMethod::Kind::Quadrature) {
        std::vector<double> cov(a.n);
        for (int j = 0; j < a.n; ++j) cov[j] = a.sd[j] * a.sd[j];
        double v = gh_integrate(
            a.n, cov,
            [&](std::span<const double> y) {
                double arg[3];
                for (int j = 0; j < a.n; ++j) arg[j] = a.mean[j] + y[j];
                return f.value(std::span<const double>(arg, a.n));
            },
            method.order);
        return {v, 0.0};
    }
    Rng rng(method.seed);
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < method.samples; ++i) {
        double arg[3];
        for (int j = 0; j < a.n; ++j) arg[j] = a.mean[j] + a.sd[j] * rng.normal();
        double v = f.value(std::span<const double>(arg, a.n));
        sum += v;
        sum2 += v * v;
    }
    double mean = sum / method.samples;
    double var = std::max(0.0, sum2 / method.samples - mean * mean);
    return {mean, std::sqrt(var / method.samples)};
}

Estimate dpt_apply(const SpectralModel& model, double t, const HVec& z, const CylFunction& f,
                   const HVec& x, const HVec& h, const EvalMethod& method) {
    if (!(t > 0.0)) throw std::invalid_argument("dpt_apply: t must be positive");
    ActiveData a = gather(model, t, z, f, x);
    double hv[3];
    for (int j = 0; j < a.n; ++j) {
        std::size_t k = static_cast<std::size_t>(f.active_coords()[j]);
        hv[j] = k <= h.size() ? h[k - 1] : 0.0;
    }
    // Integrand in standard-normal variables s: <Lambda_t h, s>_active f(mean + sd s).
    auto integrand = [&](std::span<const double> s) {
        double arg[3];
        double lin = 0.0;
        for (int j = 0; j < a.n; ++j) {
            arg[j] = a.mean[j] + a.sd[j] * s[j];
            lin += a.lam[j] * hv[j] * s[j];
        }
        return lin * f.value(std::span<const double>(arg, a.n));
    };
    if (method.kind == EvalMethod::Kind::Quadrature) {
        std::vector<double> ones(a.n, 1.0);
        double v = gh_integrate(a.n, ones, integrand, method.order);
        return {v, 0.0};
    }
    Rng rng(method.seed);
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < method.samples; ++i) {
        double s[3];
        for (int j = 0; j < a.n; ++j) s[j] = rng.normal();
        double v = integrand(std::span<const double>(s, a.n));
        sum += v;
        sum2 += v * v;
    }
    double mean = sum / method.samples;
    double var = std::max(0.0, sum2 / method.samples - mean * mean);
    return {mean, std::sqrt(var / method.samples)};
}

Estimate dpt_apply_naive_mc(const SpectralModel& model, double t, const HVec& z,
                            const CylFunction& f, const HVec& x, const HVec& h, SeedSpec seed,
                            int samples) {
    if (!(t > 0.0)) throw std::invalid_argument("dpt_apply_naive_mc: t must be positive");
    const std::size_t M = model.M();
    auto lam = model.lambda_t(t);
    auto q = model.covariance_qt(t);
    HVec mean = model.semigroup_apply(t, x) + model.gamma_t(t, z);
    Rng rng(seed);
    double sum = 0.0, sum2 = 0.0;
    HVec pt(M);
    for (int i = 0; i < samples; ++i) {
        double lin = 0.0;
        for (std::size_t k = 0; k < M; ++k) {
            double s = rng.normal();
            pt[k] = mean[k] + std::sqrt(q[k]) * s;
            double hk = k < h.size() ? h[k] : 0.0;
            lin += lam[k] * hk * s;
        }
        double v = lin * f.value_at(pt);
        sum += v;
        sum2 += v * v;
    }
    double m = sum / samples;
    double var = std::max(0.0, sum2 / samples - m * m);
    return {m, std::sqrt(var / samples)};
}

double d2pt_estimate(const SpectralModel& model, double t, const HVec& z, const CylFunction& f,
                     const HVec& x, const HVec& h, const HVec& k, const EvalMethod& method) {
    if (!(t > 0.0)) throw std::invalid_argument("d2pt_estimate: t must be positive");
    double step = 1e-4 * (1.0 + norm(x));
    HVec xp = x + step * k;
    HVec xm = x - step * k;
    double dp = dpt_apply(model, t, z, f, xp, h, method).value;
    double dm = dpt_apply(model, t, z, f, xm, h, method).value;
    return (dp - dm) / (2.0 * step);
}

std::vector<HVec> sup_battery(const SpectralModel& model, const std::vector<int>& active,
                              int count, SeedSpec seed) {
    const int n = static_cast<int>(active.size());
    if (n < 1 || n > 3) throw std::invalid_argument("sup_battery: 1..3 active coordinates");
    double smax = 0.0;
    for (double s : model.invariant_covariance()) smax = std::max(smax, s);
    const double L = 6.0 * std::sqrt(smax);
    Rng rng(seed);
    // Latin hypercube: one stratum per point per dimension, shuffled.
    std::vector<std::vector<int>> perm(n, std::vector<int>(count));
    for (int d = 0; d < n; ++d) {
        std::iota(perm[d].begin(), perm[d].end(), 0);
        for (int i = count - 1; i > 0; --i) {
            int j = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(i + 1));
            std::swap(perm[d][i], perm[d][j]);
        }
    }
    std::vector<HVec> pts;
    pts.reserve(count);
    for (int i = 0; i < count; ++i) {
        HVec x(model.M(), 0.0);
        for (int d = 0; d < n; ++d) {
            double u = (perm[d][i] + rng.uniform()) / count;
            x[static_cast<std::size_t>(active[d]) - 1] = -L + 2.0 * L * u;
        }
        pts.push_back(std::move(x));
    }
    return pts;
}

namespace {

// Pattern-search polish of a battery maximum: shrink coordinate steps
// from the best starting points.
double polish_max(const std::function<double(const HVec&)>& obj, std::vector<HVec> starts,
                  const std::vector<int>& active, double step0) {
    double best = 0.0;
    for (auto& x : starts) {
        double fx = obj(x);
        double step = step0;
        while (step > step0 / 64.0) {
            bool improved = false;
            for (int d : active) {
                for (double s : {step, -step}) {
                    HVec y = x;
                    y[static_cast<std::size_t>(d) - 1] += s;
                    double fy = obj(y);
                    if (fy > fx) {
                        fx = fy;
                        x = y;
                        improved = true;
                    }
                }
            }
            if (!improved) step *= 0.5;
        }
        best = std::max(best, fx);
    }
    return best;
}

}  // namespace

std::vector<std::pair<double, double>> blowup_rate_probe(const SpectralModel& model,
                                                         const CylFunction& f, const HVec& z,
                                                         const std::vector<double>& t_grid,
                                                         const EvalMethod& method,
                                                         int battery_count) {
    if (t_grid.empty()) throw std::invalid_argument("blowup_rate_probe: empty t grid");
    const auto& active = f.active_coords();
    auto battery = sup_battery(model, active, battery_count);
    double smax = 0.0;
    for (double s : model.invariant_covariance()) smax = std::max(smax, s);
    std::vector<std::pair<double, double>> out;
    for (double t : t_grid) {
        if (!(t > 0.0)) throw std::invalid_argument("blowup_rate_probe: t must be positive");
        auto gradnorm = [&](const HVec& x) {
            double s = 0.0;
            for (int k : active) {
                double g = dpt_apply(model, t, z, f, x, basis_vec(model.M(), k), method).value;
                s += model.lambda(k) * g * g;
            }
            return std::sqrt(s);
        };
        std::vector<std::pair<double, std::size_t>> scored;
        for (std::size_t i = 0; i < battery.size(); ++i) scored.emplace_back(gradnorm(battery[i]), i);
        std::sort(scored.rbegin(), scored.rend());
        std::vector<HVec> top;
        for (std::size_t i = 0; i < std::min<std::size_t>(8, scored.size()); ++i)
            top.push_back(battery[scored[i].second]);
        double sup = polish_max(gradnorm, std::move(top), active, std::sqrt(smax));
        out.emplace_back(t, sup);
    }
    return out;
}

double loglog_slope(const std::vector<std::pair<double, double>>& table, double t_lo,
                    double t_hi) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& [t, v] : table) {
        if (t < t_lo || t > t_hi || !(v > 0.0)) continue;
        double lx = std::log(t), ly = std::log(v);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) throw std::invalid_argument("loglog_slope: fewer than 2 usable points");
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace sglab
