#include "sglab/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sglab {

namespace {

constexpr double kPi = std::numbers::pi;

struct StepCoeffs {
    std::vector<double> decay;   // e^{-lambda_k dt}
    std::vector<double> drw;     // lambda_k^{1/2} (1 - e^{-lambda_k dt}) / lambda_k
    std::vector<double> sd;      // sqrt((1 - e^{-2 lambda_k dt}) / (2 lambda_k))
};

StepCoeffs step_coeffs(const SpectralModel& model, std::size_t m, double dt) {
    StepCoeffs c;
    c.decay.resize(m);
    c.drw.resize(m);
    c.sd.resize(m);
    for (std::size_t k = 1; k <= m; ++k) {
        double lk = model.lambda(static_cast<int>(k));
        double e1 = -std::expm1(-lk * dt);   // 1 - e^{-lambda dt}
        double e2 = -std::expm1(-2.0 * lk * dt);
        c.decay[k - 1] = 1.0 - e1;
        c.drw[k - 1] = std::sqrt(lk) * e1 / lk;
        c.sd[k - 1] = std::sqrt(e2 / (2.0 * lk));
    }
    return c;
}

void check_state(const HVec& x, double guard, double t, const std::vector<double>& levels) {
    double n = norm(x);
    if (std::isfinite(n) && n < guard) return;
    std::string lvl = levels.empty() ? "none recorded" : std::to_string(levels.back());
    throw std::runtime_error(
        "simulate: |X_t|_H reached the overflow guard at t = " + std::to_string(t) +
        "; the path has left every tracked ball (tau_n = first t with |X_t|_H >= n, "
        "largest tracked n: " + lvl + ").  Truncate the drift or shorten T.");
}

}  // namespace

std::string scheme_name(Scheme s) {
    return s == Scheme::exponential_euler ? "exponential_euler" : "factorization_check";
}

Scheme scheme_from_name(const std::string& name) {
    if (name == "exponential_euler") return Scheme::exponential_euler;
    if (name == "factorization_check") return Scheme::factorization_check;
    throw std::invalid_argument("unknown scheme: " + name);
}

void simulate_stream(const SpectralModel& model, const DriftPtr& drift, const SimSpec& spec,
                     const StepCallback& cb) {
    if (!(spec.dt > 0.0) || !(spec.T > 0.0))
        throw std::invalid_argument("simulate: T and dt must be positive");
    if (spec.m < 1 || spec.m > model.M())
        throw std::invalid_argument("simulate: Galerkin level m out of range");
    if (spec.n_paths < 1) throw std::invalid_argument("simulate: need at least one path");
    const std::size_t m = spec.m;
    const std::size_t steps = static_cast<std::size_t>(std::llround(spec.T / spec.dt));
    if (steps < 1 || std::abs(steps * spec.dt - spec.T) > 1e-9 * std::max(1.0, spec.T))
        throw std::invalid_argument("simulate: T must be an integer multiple of dt");
    HVec x0m = project(spec.x0, m);
    x0m.resize(m, 0.0);
    StepCoeffs c = step_coeffs(model, m, spec.dt);
    const HVec no_eta;

    if (spec.scheme == Scheme::exponential_euler) {
        for (std::size_t i = 0; i < spec.n_paths; ++i) {
            Rng rng({spec.seed.master_seed, spec.seed.stream_id + i});
            HVec x = x0m;
            cb(i, 0, 0.0, x, no_eta);
            HVec eta(m);
            for (std::size_t step = 1; step <= steps; ++step) {
                HVec fx = drift->eval(x);
                for (std::size_t k = 0; k < m; ++k) eta[k] = rng.normal();
                for (std::size_t k = 0; k < m; ++k)
                    x[k] = c.decay[k] * x[k] + c.drw[k] * fx[k] + c.sd[k] * eta[k];
                check_state(x, spec.blowup_guard, step * spec.dt, spec.tau_levels);
                cb(i, step, step * spec.dt, x, eta);
            }
        }
        return;
    }

    // factorization route: same Brownian increments dW = sqrt(dt) eta, the
    // stochastic convolution rebuilt as (sin pi alpha / pi) G_alpha Y
    if (!(spec.alpha > 0.5 && spec.alpha < 1.0))
        throw std::invalid_argument("simulate: factorization alpha must lie in (1/2, 1)");
    const double alpha = spec.alpha, dt = spec.dt;
    const double pref = std::sin(kPi * alpha) / kPi;
    std::vector<double> lam(m);
    for (std::size_t k = 1; k <= m; ++k) lam[k - 1] = model.lambda(static_cast<int>(k));
    // Kernel tables shared by every path.  The singular power factors are
    // integrated exactly over each step interval (product integration) and
    // only the smooth exponential is frozen at the lag midpoint; plain
    // midpoint sampling would lose the singular mass at both Beta endpoints.
    std::vector<double> kern1(steps * m), kern2(steps * m);
    for (std::size_t d = 0; d < steps; ++d) {
        // Y kernel: (1/dt) int (s_j - r')^{-alpha} dr' over the increment
        // interval, lag in [max((d-1/2)dt, 0), (d+1/2)dt]
        double lo1 = d == 0 ? 0.0 : (d - 0.5) * dt;
        double hi1 = (d + 0.5) * dt;
        double p1 = (std::pow(hi1, 1.0 - alpha) - std::pow(lo1, 1.0 - alpha)) /
                    ((1.0 - alpha) * dt);
        // G_alpha kernel: int (t - s)^{alpha-1} ds over the Y interval,
        // lag in [d dt, (d+1)dt]
        double lo2 = d * dt, hi2 = (d + 1) * dt;
        double p2 = (std::pow(hi2, alpha) - std::pow(lo2, alpha)) / alpha;
        for (std::size_t k = 0; k < m; ++k) {
            kern1[d * m + k] = p1 * std::exp(-lam[k] * 0.5 * (lo1 + hi1));
            kern2[d * m + k] = p2 * std::exp(-lam[k] * 0.5 * (lo2 + hi2));
        }
    }
    for (std::size_t i = 0; i < spec.n_paths; ++i) {
        Rng rng({spec.seed.master_seed, spec.seed.stream_id + i});
        std::vector<HVec> dw;     // per-step increments
        std::vector<HVec> ymid;   // Y at midpoints s_j = (j + 1/2) dt
        HVec x = x0m, D(m, 0.0), eta(m);
        cb(i, 0, 0.0, x, no_eta);
        for (std::size_t step = 1; step <= steps; ++step) {
            HVec fx = drift->eval(x);
            for (std::size_t k = 0; k < m; ++k) eta[k] = rng.normal();
            HVec inc(m);
            for (std::size_t k = 0; k < m; ++k) inc[k] = std::sqrt(dt) * eta[k];
            dw.push_back(inc);
            // Y at the newest midpoint, increments placed at interval left ends
            std::size_t j = step - 1;
            HVec yrow(m, 0.0);
            for (std::size_t r = 0; r <= j; ++r) {
                const double* kr = &kern1[(j - r) * m];
                for (std::size_t k = 0; k < m; ++k) yrow[k] += kr[k] * dw[r][k];
            }
            ymid.push_back(std::move(yrow));
            // W_A(t_step) over all stored midpoints
            double t = step * dt;
            HVec wa(m, 0.0);
            for (std::size_t q = 0; q < step; ++q) {
                const double* kr = &kern2[(step - 1 - q) * m];
                for (std::size_t k = 0; k < m; ++k) wa[k] += kr[k] * ymid[q][k];
            }
            for (std::size_t k = 0; k < m; ++k) {
                D[k] = c.decay[k] * D[k] + c.drw[k] * fx[k];
                x[k] = std::exp(-lam[k] * t) * x0m[k] + D[k] + pref * wa[k];
            }
            check_state(x, spec.blowup_guard, t, spec.tau_levels);
            cb(i, step, t, x, eta);
        }
    }
}

std::vector<double> PathEnsemble::coord_samples(std::size_t t_index, std::size_t k) const {
    std::vector<double> out(spec.n_paths);
    for (std::size_t i = 0; i < spec.n_paths; ++i) out[i] = at(i, t_index, k);
    return out;
}

std::vector<double> PathEnsemble::functional_samples(
    std::size_t t_index, const std::function<double(const HVec&)>& f) const {
    std::vector<double> out(spec.n_paths);
    for (std::size_t i = 0; i < spec.n_paths; ++i) out[i] = f(state(i, t_index));
    return out;
}

HVec PathEnsemble::state(std::size_t path, std::size_t t_index) const {
    HVec x(spec.m);
    for (std::size_t k = 0; k < spec.m; ++k) x[k] = at(path, t_index, k);
    return x;
}

PathEnsemble simulate(const SpectralModel& model, const DriftPtr& drift, SimSpec spec) {
    const std::size_t steps = static_cast<std::size_t>(std::llround(spec.T / spec.dt));
    // map snapshot times onto step indices
    std::vector<std::size_t> keep;
    if (spec.snapshot_times.empty()) {
        for (std::size_t s = 0; s <= steps; ++s) keep.push_back(s);
    } else {
        for (double t : spec.snapshot_times) {
            if (t < 0.0 || t > spec.T + 1e-12)
                throw std::invalid_argument("simulate: snapshot time outside [0, T]");
            auto s = static_cast<std::size_t>(std::llround(t / spec.dt));
            if (std::abs(s * spec.dt - t) > 1e-9)
                throw std::invalid_argument("simulate: snapshot times must sit on the step grid");
            keep.push_back(std::min(s, steps));
        }
    }
    std::vector<double> levels = spec.tau_levels;
    std::sort(levels.begin(), levels.end());
    spec.tau_levels = levels;

    PathEnsemble e;
    e.spec = spec;
    e.drift_kind = drift->kind();
    e.drift = drift;
    for (std::size_t s : keep) e.times.push_back(s * spec.dt);
    e.data.assign(spec.n_paths * keep.size() * spec.m, 0.0);
    e.tau.assign(spec.n_paths, std::vector<double>(levels.size(), spec.T + spec.dt));

    simulate_stream(model, drift, spec,
                    [&](std::size_t path, std::size_t step, double t, const HVec& x, const HVec&) {
                        for (std::size_t j = 0; j < keep.size(); ++j)
                            if (keep[j] == step)
                                std::copy(x.begin(), x.end(),
                                          e.data.begin() + (path * keep.size() + j) * spec.m);
                        double n = norm(x);
                        for (std::size_t l = 0; l < levels.size(); ++l)
                            if (n >= levels[l]) e.tau[path][l] = std::min(e.tau[path][l], t);
                    });
    return e;
}

MomentTable moment_probe(const PathEnsemble& ensemble, int p) {
    if (p < 2 || p % 2 != 0) throw std::invalid_argument("moment_probe: p must be even, >= 2");
    MomentTable tab;
    tab.p = p;
    tab.times = ensemble.times;
    const std::size_t N = ensemble.spec.n_paths;
    for (std::size_t ti = 0; ti < ensemble.times.size(); ++ti) {
        double s1 = 0.0, s2 = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            double n2 = 0.0;
            for (std::size_t k = 0; k < ensemble.spec.m; ++k) {
                double v = ensemble.at(i, ti, k);
                n2 += v * v;
            }
            double mp = std::pow(n2, p / 2.0);
            s1 += mp;
            s2 += mp * mp;
        }
        double mean = s1 / N;
        double var = std::max(0.0, s2 / N - mean * mean);
        tab.moment.push_back(mean);
        tab.sigma.push_back(std::sqrt(var / N));
        tab.sup_moment = std::max(tab.sup_moment, mean);
    }
    return tab;
}

std::vector<HVec> g_alpha_apply(const SpectralModel& model, double alpha,
                                const std::vector<HVec>& f_mid, double dt,
                                const std::vector<double>& t_grid) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("g_alpha_apply: alpha must lie in (0, 1]");
    std::size_t m = f_mid.empty() ? 0 : f_mid.front().size();
    std::vector<HVec> out;
    for (double t : t_grid) {
        HVec acc(m, 0.0);
        for (std::size_t j = 0; j < f_mid.size(); ++j) {
            double s = (j + 0.5) * dt;
            if (s >= t) break;
            double kern = dt * std::pow(t - s, alpha - 1.0);
            for (std::size_t k = 0; k < m; ++k)
                acc[k] += kern * std::exp(-model.lambda(static_cast<int>(k + 1)) * (t - s)) *
                          f_mid[j][k];
        }
        out.push_back(std::move(acc));
    }
    return out;
}

std::vector<HVec> factorization_convolution(const SpectralModel& model, double alpha,
                                            const std::vector<HVec>& dw, double dt,
                                            const std::vector<double>& t_grid) {
    if (!(alpha > 0.5 && alpha < 1.0))
        throw std::invalid_argument("factorization_convolution: alpha must lie in (1/2, 1)");
    std::size_t m = dw.empty() ? 0 : dw.front().size();
    // product-integration kernels, matching the simulator's factorization route
    std::vector<HVec> ymid;
    for (std::size_t j = 0; j < dw.size(); ++j) {
        HVec yrow(m, 0.0);
        for (std::size_t r = 0; r <= j; ++r) {
            std::size_t d = j - r;
            double lo = d == 0 ? 0.0 : (d - 0.5) * dt;
            double hi = (d + 0.5) * dt;
            double kern = (std::pow(hi, 1.0 - alpha) - std::pow(lo, 1.0 - alpha)) /
                          ((1.0 - alpha) * dt);
            double mid = 0.5 * (lo + hi);
            for (std::size_t k = 0; k < m; ++k)
                yrow[k] += kern * std::exp(-model.lambda(static_cast<int>(k + 1)) * mid) *
                           dw[r][k];
        }
        ymid.push_back(std::move(yrow));
    }
    double pref = std::sin(kPi * alpha) / kPi;
    std::vector<HVec> out;
    for (double t : t_grid) {
        HVec acc(m, 0.0);
        std::size_t nsteps = static_cast<std::size_t>(std::llround(t / dt));
        for (std::size_t q = 0; q < std::min(nsteps, ymid.size()); ++q) {
            std::size_t d = nsteps - 1 - q;
            double lo = d * dt, hi = (d + 1) * dt;
            double kern = (std::pow(hi, alpha) - std::pow(lo, alpha)) / alpha;
            double mid = 0.5 * (lo + hi);
            for (std::size_t k = 0; k < m; ++k)
                acc[k] += pref * kern *
                          std::exp(-model.lambda(static_cast<int>(k + 1)) * mid) * ymid[q][k];
        }
        out.push_back(std::move(acc));
    }
    return out;
}

double GirsanovReport::weighted_mean(const std::vector<double>& f_samples, double* sigma) const {
    double sw = 0.0, swf = 0.0, s2 = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] == 0.0 && flagged > 0) continue;
        sw += weights[i];
        swf += weights[i] * f_samples[i];
        s2 += weights[i] * f_samples[i] * weights[i] * f_samples[i];
        ++n;
    }
    double mean = swf / sw;
    if (sigma && n > 1) {
        double m1 = swf / n;
        double var = std::max(0.0, s2 / n - m1 * m1);
        *sigma = std::sqrt(var / n) / (sw / n);
    }
    return mean;
}

GirsanovReport girsanov_weight(const SpectralModel& model, const PathEnsemble& ensemble,
                               const std::function<HVec(double, const HVec&)>& B) {
    const SimSpec& spec = ensemble.spec;
    const double sqdt = std::sqrt(spec.dt);
    GirsanovReport rep;
    rep.weights.assign(spec.n_paths, 0.0);
    std::vector<double> U(spec.n_paths, 0.0), Q(spec.n_paths, 0.0);
    std::vector<HVec> prev(1);
    simulate_stream(model, ensemble.drift, spec,
                    [&](std::size_t path, std::size_t step, double t, const HVec& x,
                        const HVec& eta) {
                        if (step == 0) {
                            prev[0] = x;
                            return;
                        }
                        HVec b = B(t - spec.dt, prev[0]);
                        for (std::size_t k = 0; k < spec.m && k < b.size(); ++k) {
                            U[path] += b[k] * sqdt * eta[k];
                            Q[path] += b[k] * b[k] * spec.dt;
                        }
                        prev[0] = x;
                    });
    double s1 = 0.0, s2 = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < spec.n_paths; ++i) {
        double w = std::exp(U[i] - 0.5 * Q[i]);
        if (!std::isfinite(w)) {
            ++rep.flagged;
            rep.weights[i] = 0.0;
            continue;
        }
        rep.weights[i] = w;
        s1 += w;
        s2 += w * w;
        ++n;
    }
    if (n > 0) {
        rep.mean_weight = s1 / n;
        double var = std::max(0.0, s2 / n - rep.mean_weight * rep.mean_weight);
        rep.sigma_mean = std::sqrt(var / n);
    }
    return rep;
}

NovikovProbe novikov_probe(const SpectralModel& model, const PathEnsemble& ensemble) {
    const SimSpec& spec = ensemble.spec;
    std::vector<double> acc(spec.n_paths, 0.0);
    simulate_stream(model, ensemble.drift, spec,
                    [&](std::size_t path, std::size_t step, double, const HVec& x, const HVec&) {
                        if (step == 0) return;
                        double n2 = 0.0;
                        for (double v : x) n2 += v * v;
                        acc[path] += 0.5 * n2 * spec.dt;
                    });
    double s1 = 0.0, s2 = 0.0;
    for (double a : acc) {
        double e = std::exp(a);
        s1 += e;
        s2 += e * e;
    }
    NovikovProbe p;
    p.mean = s1 / spec.n_paths;
    double var = std::max(0.0, s2 / spec.n_paths - p.mean * p.mean);
    p.sigma = std::sqrt(var / spec.n_paths);
    return p;
}

}  // namespace sglab
