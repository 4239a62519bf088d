#pragma once

#include <utility>
#include <vector>

#include "sglab/cyl_function.hpp"
#include "sglab/drift.hpp"
#include "sglab/grid_fn.hpp"
#include "sglab/hvec.hpp"
#include "sglab/ou_semigroup.hpp"
#include "sglab/spectral_model.hpp"

namespace sglab {

// Resolvent of the generalized OU generator at one point:
// u(x) = int_0^inf e^{-lambda t} P_t^{(z)} f(x) dt, plus its gradient and
// the (-A)^{1/2}-scaled gradient.  quad_error carries the analytic tail
// bound plus the panel-doubling difference of the time quadrature.
struct ResolventResult {
    double lambda = 0.0;
    double value = 0.0;
    HVec gradient;         // supported on the active coordinates of f
    HVec sqrtA_gradient;   // lambda_k^{1/2} * gradient_k
    double quad_error = 0.0;
};

// Time quadrature for int_0^inf e^{-lambda t} g(t) dt: the substitution
// t = tau^2 removes the t^{-1/2} gradient singularity, composite
// Gauss-Legendre on geometric panels covers (0, sqrt(40/lambda)], and the
// tail beyond T_cut = 40/lambda is bounded analytically.
struct LaplaceRule {
    std::vector<std::pair<double, double>> nodes;  // (t_i, w_i)
    double t_cut = 0.0;
    double tail_factor = 0.0;  // e^{-lambda T_cut} / lambda; times ||g||_0 bounds the tail
};
LaplaceRule laplace_rule(double lambda, int panels = 24, int order = 8);

ResolventResult resolvent(const SpectralModel& model, double lambda, const HVec& z,
                          const CylFunction& f, const HVec& x, const EvalMethod& method = {});

// Tabulated resolvent over the active-coordinate box: value field plus
// the (-A)^{1/2}-scaled gradient field, one grid per component.
struct ResolventField {
    std::vector<int> active;
    GridFn value;
    std::vector<GridFn> sqrtA_grad;
    double quad_error = 0.0;
};

struct GridSpec {
    int points_per_axis = 513;
    double half_width = -1.0;  // < 0: use 6 * max_k S_k^{1/2}
};

double default_half_width(const SpectralModel& model);
std::vector<GridAxis> make_axes(const SpectralModel& model, const std::vector<int>& active,
                                const GridSpec& spec);

ResolventField tabulate_resolvent(const SpectralModel& model, double lambda, const HVec& z,
                                  const CylFunction& f, const GridSpec& spec,
                                  const EvalMethod& method = {});

// --- verification reports -------------------------------------------------

struct BoundReport {
    double max_ratio = 0.0;   // max over battery of |(-A)^{1/2} Du| / ||f||_0
    double bound = 0.0;       // pi/sqrt(2) (+ tolerance applied by callers)
    double shifted_max_ratio = 0.0;  // s > 0 variant against |(-A)^{-1/2} e^{sA} h|
    bool pass = false;
};

// Dimension-free gradient contract: sup_x |(-A)^{1/2} Du^{(z)}(x)| <= pi/sqrt(2)
// ||f||_0, plus the shifted s > 0 inequality along h = e_k directions.
BoundReport verify_optimal_bound(const SpectralModel& model, double lambda, const HVec& z,
                                 const std::vector<CylFunction>& f_battery,
                                 double tolerance = 1e-2, int battery_points = 32,
                                 double shift_s = 0.5);

struct IncrementReport {
    // per s: max over battery of |P_s Du - Du|_H / (s^{1/2} ||f||_0)
    std::vector<std::pair<double, double>> ratio_by_s;
    double max_ratio = 0.0;
    double slope = 0.0;  // log-log slope of the raw increment vs s
    bool pass = false;
};

// Gradient increment contract: |P_s^{(z)} Du^{(z)}(x) - Du^{(z)}(x)|_H <= C2 s^{1/2} ||f||_0.
IncrementReport verify_increment_bound(const SpectralModel& model, double lambda, const HVec& z,
                                       const CylFunction& f, const std::vector<double>& s_grid,
                                       const GridSpec& spec = {}, double tolerance = 5e-2,
                                       int battery_points = 16);

// Resolvent identity R(mu) - R(lambda) = (lambda - mu) R(mu) R(lambda):
// max absolute residual over the battery, with the composed side evaluated
// through a grid interpolation of x -> R(lambda) f (x).
double resolvent_identity_check(const SpectralModel& model, double lambda, double mu,
                                const HVec& z, const CylFunction& f,
                                const std::vector<HVec>& x_battery, const GridSpec& spec = {});

// L^{(z)} f(x) = 1/2 sum_a d2_a f - sum_a lambda_a x_a d_a f
//                + sum_a lambda_a^{1/2} z_a d_a f   (active coordinates only).
double generator_apply(const SpectralModel& model, const CylFunction& f, const HVec& z,
                       const HVec& x);

// max over battery of |lambda u - L^{(z)} u - f| with u from the resolvent
// and L u taken by finite differences of the tabulated u field.
double generator_residual_check(const SpectralModel& model, double lambda, const HVec& z,
                                const CylFunction& f, const std::vector<HVec>& x_battery,
                                const GridSpec& spec = {});

// --- fixed point ----------------------------------------------------------

struct FixedPointState {
    std::vector<int> active;
    GridFn u;
    std::vector<GridFn> sqrtA_grad;  // lambda_k^{1/2} D_k u per active coordinate
    int iterations = 0;
    double residual = 0.0;                  // integral-equation residual on the grid
    std::vector<double> update_norms;       // E-norm of each Picard update
    double sup_u = 0.0;
    double sup_sqrtA_grad = 0.0;
};

// Picard iteration for
//   u = R^{(z)}(lambda)[ g + <F - z, (-A)^{1/2} Du> ]
// on a tensor grid over the shared active coordinates.  Requires
// sup_x |F(x) - z| < 1/4 and lambda >= 1 (checked).
FixedPointState fixed_point_solve(const SpectralModel& model, double lambda, const HVec& z,
                                  const DriftPtr& F, const CylFunction& g, const GridSpec& spec,
                                  double tol = 1e-6, int max_iter = 60,
                                  const EvalMethod& method = {});

// u_{nm}(x): fixed point on the m-truncated model with the mollified,
// projected drift pi_m F_n pi_m and data f o pi_m.
struct TruncatedSolution {
    double value = 0.0;
    FixedPointState state;
};
TruncatedSolution truncated_solution(const SpectralModel& model, double lambda, int n,
                                     std::size_t m, const CylFunction& f, const DriftPtr& F,
                                     const HVec& x, const GridSpec& spec = {},
                                     const HVec& z = {});

}  // namespace sglab
