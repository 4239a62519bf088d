#pragma once

#include <utility>
#include <vector>

#include "sglab/cyl_function.hpp"
#include "sglab/gaussian.hpp"
#include "sglab/hvec.hpp"
#include "sglab/rng.hpp"
#include "sglab/spectral_model.hpp"

namespace sglab {

// How to evaluate the Gaussian integrals of the semigroup: tensor
// Gauss-Hermite quadrature (n <= 3 active coordinates) or Monte Carlo.
struct EvalMethod {
    enum class Kind { Quadrature, MonteCarlo };
    Kind kind = Kind::Quadrature;
    int order = kDefaultGhOrder;  // quadrature order per dimension
    SeedSpec seed{};              // MC stream
    int samples = 100000;         // MC sample count

    static EvalMethod quadrature(int order = kDefaultGhOrder) {
        return {Kind::Quadrature, order, {}, 0};
    }
    static EvalMethod montecarlo(SeedSpec seed, int samples) {
        return {Kind::MonteCarlo, 0, seed, samples};
    }
};

// Point estimate with its error scale: MC standard error, or 0 for a
// converged quadrature.
struct Estimate {
    double value = 0.0;
    double sigma = 0.0;
};

// P_t^{(z)} f(x) = int f(e^{tA} x + y + Gamma_t z) dN(0, Q_t)(y).
// Cylindrical f collapses the integral to its active coordinates.
// t = 0 returns f(x) exactly.
Estimate pt_apply(const SpectralModel& model, double t, const HVec& z, const CylFunction& f,
                  const HVec& x, const EvalMethod& method = {});

// D_h P_t^{(z)} f(x) = int <Lambda_t h, Q_t^{-1/2} y> f(...) dN(0, Q_t).
// The inactive-coordinate part of h is dropped analytically (the
// mean-zero cancellation), so only active coordinates are integrated.
Estimate dpt_apply(const SpectralModel& model, double t, const HVec& z, const CylFunction& f,
                   const HVec& x, const HVec& h, const EvalMethod& method = {});

// Same derivative evaluated the naive way by MC over all M coordinates,
// with no cancellation applied.  Exists so the cancellation can be
// checked statistically; never used on the production path.
Estimate dpt_apply_naive_mc(const SpectralModel& model, double t, const HVec& z,
                            const CylFunction& f, const HVec& x, const HVec& h, SeedSpec seed,
                            int samples);

// Central finite difference of dpt_apply in direction k:
// estimates D^2_{hk} P_t^{(z)} f(x).  Step 1e-4 * (1 + |x|).
double d2pt_estimate(const SpectralModel& model, double t, const HVec& z, const CylFunction& f,
                     const HVec& x, const HVec& h, const HVec& k,
                     const EvalMethod& method = {});

// Latin-hypercube battery over the active-coordinate box [-L, L]^n with
// L = 6 * max_k S_k^{1/2}; the standard stand-in for sup_x in all the
// sup-norm contracts (a lower bound for the true sup, which is the sound
// direction when verifying upper estimates).
std::vector<HVec> sup_battery(const SpectralModel& model, const std::vector<int>& active,
                              int count = 256, SeedSpec seed = {12345, 0});

// sup over the battery of |(-A)^{1/2} D P_t^{(z)} f(x)|_H for each t,
// with a pattern-search polish from the best points.  Returns (t, sup).
std::vector<std::pair<double, double>> blowup_rate_probe(const SpectralModel& model,
                                                         const CylFunction& f, const HVec& z,
                                                         const std::vector<double>& t_grid,
                                                         const EvalMethod& method = {},
                                                         int battery_count = 64);

// Least-squares slope of log(value) vs log(t) over the subrange
// [t_lo, t_hi] of a probe table.
double loglog_slope(const std::vector<std::pair<double, double>>& table, double t_lo, double t_hi);

}  // namespace sglab
