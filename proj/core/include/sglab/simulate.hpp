#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sglab/drift.hpp"
#include "sglab/hvec.hpp"
#include "sglab/rng.hpp"
#include "sglab/spectral_model.hpp"

namespace sglab {

// Two independent constructions of the same law: the exact-OU exponential
// Euler recursion, and the factorization route that rebuilds the stochastic
// convolution as G_alpha applied to an auxiliary process on the same
// Brownian increments.
enum class Scheme { exponential_euler, factorization_check };

std::string scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

struct SimSpec {
    Scheme scheme = Scheme::exponential_euler;
    double T = 1.0;
    double dt = 1e-2;
    std::size_t m = 1;        // Galerkin level, <= model M
    std::size_t n_paths = 1;
    SeedSpec seed{};          // path i draws from stream seed.stream_id + i
    HVec x0;
    std::vector<double> snapshot_times;  // empty: store every step
    std::vector<double> tau_levels;      // exit-time levels n
    double blowup_guard = 1e8;
    double alpha = 0.75;      // factorization exponent, in (1/2, 1]
};

struct PathEnsemble {
    SimSpec spec;
    std::string drift_kind;
    DriftPtr drift;
    std::vector<double> times;           // stored snapshot times
    std::vector<double> data;            // [path][time][coord], row-major
    std::vector<std::vector<double>> tau;  // [path][level], T + dt when not hit

    double at(std::size_t path, std::size_t t_index, std::size_t k) const {
        return data[(path * times.size() + t_index) * spec.m + k];
    }
    // all-path samples of coordinate k (0-based) at one stored time
    std::vector<double> coord_samples(std::size_t t_index, std::size_t k) const;
    // all-path samples of a functional of the state at one stored time
    std::vector<double> functional_samples(std::size_t t_index,
                                           const std::function<double(const HVec&)>& f) const;
    HVec state(std::size_t path, std::size_t t_index) const;
};

// cb(path, step, t, x, eta): step 0 is the initial state with empty eta;
// later steps pass the standard-normal draws that produced them.
using StepCallback = std::function<void(std::size_t path, std::size_t step, double t,
                                        const HVec& x, const HVec& eta)>;

void simulate_stream(const SpectralModel& model, const DriftPtr& drift, const SimSpec& spec,
                     const StepCallback& cb);

PathEnsemble simulate(const SpectralModel& model, const DriftPtr& drift, SimSpec spec);

// per stored time, E |X_t|^p with a standard-error estimate; p even
struct MomentTable {
    int p = 2;
    std::vector<double> times;
    std::vector<double> moment;
    std::vector<double> sigma;
    double sup_moment = 0.0;
};
MomentTable moment_probe(const PathEnsemble& ensemble, int p);

// G_alpha f(t) = int_0^t (t-s)^{alpha-1} e^{(t-s)A} f(s) ds on midpoint
// nodes; f_mid[j] is f at s = (j + 1/2) dt.  (No sin(pi alpha)/pi factor;
// the factorization reconstruction applies it.)
std::vector<HVec> g_alpha_apply(const SpectralModel& model, double alpha,
                                const std::vector<HVec>& f_mid, double dt,
                                const std::vector<double>& t_grid);

// W_A on t_grid rebuilt from per-step Brownian increments dw[step][k]
// through Y_s = int_0^s (s-r)^{-alpha} e^{(s-r)A} dW_r and
// W_A = (sin pi alpha / pi) G_alpha Y.
std::vector<HVec> factorization_convolution(const SpectralModel& model, double alpha,
                                            const std::vector<HVec>& dw, double dt,
                                            const std::vector<double>& t_grid);

struct GirsanovReport {
    std::vector<double> weights;   // per path; non-finite entries zeroed
    std::size_t flagged = 0;       // paths with non-finite weight, excluded
    double mean_weight = 0.0;
    double sigma_mean = 0.0;
    // weighted mean of f(X_T) over unflagged paths, with standard error
    double weighted_mean(const std::vector<double>& f_samples, double* sigma = nullptr) const;
};

// Reweights the base ensemble (simulated without B) onto the law with the
// extra drift B: w = exp(sum <b, e_k> dW^(k) - 1/2 int |b|^2 ds), b = B(t, X_t).
// Paths are regenerated from the ensemble's seeds, so the stored data and
// the weights refer to the same trajectories.
GirsanovReport girsanov_weight(const SpectralModel& model, const PathEnsemble& ensemble,
                               const std::function<HVec(double, const HVec&)>& B);

// empirical E[exp(1/2 int_0^T |X_s|^2 ds)] with standard error
struct NovikovProbe {
    double mean = 0.0;
    double sigma = 0.0;
};
NovikovProbe novikov_probe(const SpectralModel& model, const PathEnsemble& ensemble);

}  // namespace sglab
