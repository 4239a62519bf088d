#pragma once

#include <string>
#include <vector>

#include "sglab/cyl_function.hpp"
#include "sglab/kolmogorov.hpp"
#include "sglab/simulate.hpp"
#include "sglab/stats.hpp"

namespace sglab {

// --- marginal-law comparison ---------------------------------------------

struct LawCell {
    double t = 0.0;
    std::string functional;
    KsResult ks;
    double energy = 0.0;
    double energy_p = 1.0;
    bool pass = false;
};

struct LawComparison {
    double level = 0.0;            // overall level before Bonferroni
    double cell_level = 0.0;       // level / number of cells
    std::vector<LawCell> cells;
    bool pass = false;
};

// Two-sample KS plus energy distance per (time, functional) cell, Bonferroni
// corrected across the grid.  The ensembles must share (x0, T, m) and differ
// only in construction (scheme, dt, mollification level).
LawComparison compare_marginals(const PathEnsemble& a, const PathEnsemble& b,
                                const std::vector<double>& times,
                                const std::vector<CylFunction>& functionals, double level,
                                int energy_perms = 200);

// --- Laplace-transform cross-check ---------------------------------------

struct CrosscheckResult {
    double lhs = 0.0;        // fixed-point u(x)
    double rhs = 0.0;        // discretized int_0^Tcut e^{-lambda s} E f(X_s) ds + 0
    double residual = 0.0;
    double mc_sigma = 0.0;
    double quad_error = 0.0; // solver quadrature + Laplace-rule refinement difference
    double disc_error = 0.0; // dt-refinement estimate of the time-discretization error
    double tail = 0.0;       // ||f||_0 e^{-lambda T_cut} / lambda
    double budget = 0.0;     // 3 mc_sigma + quad_error + disc_error + tail
    bool pass = false;
};

struct CrosscheckSim {
    double dt = 1e-2;
    std::size_t m = 1;
    std::size_t n_paths = 20000;
    SeedSpec seed{};
    double t_cut_over_lambda = 15.0;  // T_cut = this / lambda
};

// u(x) from the Picard fixed point vs the time-discretized Laplace
// transform of E f(X_s) along simulated paths of the drifted equation.
CrosscheckResult laplace_crosscheck(const SpectralModel& model, double lambda, const HVec& z,
                                    const DriftPtr& F, const CylFunction& f, const HVec& x,
                                    const CrosscheckSim& sim, const GridSpec& solver_spec = {});

// --- Zygmund diagnostics --------------------------------------------------

struct ZygmundReport {
    double max_ratio = 0.0;   // sup |D(x+h) - 2 D(x) + D(x-h)|_H / |h|
    double max_plain = 0.0;   // same without the 1/|h| scaling
    double c1 = 0.0;          // 16 [C1^2 + 1][C2 + 1]
    double bound = 0.0;       // c1 * f_sup
    bool pass = false;        // scaled reading against the bound
};

// Second differences of the vector field with components `comps` (one per
// active coordinate) along each active axis, h over h_grid, x over battery.
ZygmundReport zygmund_seminorm(const SpectralModel& model, const std::vector<int>& active,
                               const std::vector<CylFunction>& comps,
                               const std::vector<double>& h_grid,
                               const std::vector<HVec>& x_battery, double f_sup,
                               double tolerance = 1e-6);

// Convenience overload on a tabulated resolvent gradient field.
ZygmundReport zygmund_seminorm(const SpectralModel& model, const ResolventField& field,
                               const std::vector<double>& h_grid,
                               const std::vector<HVec>& x_battery, double f_sup,
                               double tolerance = 1e-6);

// --- dyadic second-derivative rate probe ----------------------------------

struct DyadicReport {
    std::vector<std::pair<double, double>> probe;  // (t, max FD of the gradient formula)
    double slope = 0.0;                            // log-log slope on the probe range
};

// Second-derivative magnitude proxy: central x-difference of dpt_apply
// along e_1.  Functions with s^{1/2} increment control decay like t^{-1/2};
// generic bounded functions like t^{-1}.
DyadicReport dyadic_telescoping_check(const SpectralModel& model, const CylFunction& f,
                                      const std::vector<double>& t_grid,
                                      const std::vector<HVec>& x_battery,
                                      double fd_step = 1e-3, const EvalMethod& method = {});

}  // namespace sglab
