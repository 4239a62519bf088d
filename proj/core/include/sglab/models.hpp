#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sglab/drift.hpp"
#include "sglab/hvec.hpp"
#include "sglab/spectral_model.hpp"

namespace sglab {

// Scalar profile h used by the Nemytskii-type drifts.  growth_const is C
// with |h(s)| <= C (1 + |s|); sup / deriv_sup are present when finite.
struct ScalarFn {
    std::string name;
    std::function<double(double)> f;
    double growth_const = 0.0;
    std::optional<double> sup;
    std::optional<double> deriv_sup;

    double operator()(double s) const { return f(s); }
};

// Named library: identity | linear-clip(c) | tanh(amp) |
// scaled-cubic-clip(scale, clip) | classical-burgers | cahn-hilliard-cubic.
ScalarFn make_scalar_fn(const std::string& name, const std::vector<double>& params = {});

// --- 1-D Burgers-type model on (0, pi), sine basis ------------------------

// lambda_k = k^2, e_k = sqrt(2/pi) sin(k xi); spatial work happens on the
// midpoint grid xi_j = (j + 1/2) pi / G with G >= 4 M, which makes the
// synthesis/analysis pair exact on the first M modes.
struct Burgers1D {
    std::size_t M = 0;
    ScalarFn h;
    int G = 0;
    SpectralModel model;
    // cached basis tables, row (k-1), column j: sin(k xi_j), cos(k xi_j)
    std::vector<double> sin_tab;
    std::vector<double> cos_tab;
};

Burgers1D make_burgers1d(std::size_t M, ScalarFn h, int G = -1);

// x(xi_j) from sine coefficients.
std::vector<double> burgers_synthesize(const Burgers1D& b, const HVec& x);

// Sine coefficients from grid values (midpoint rule).
HVec burgers_analyze(const Burgers1D& b, const std::vector<double>& vals);

// F^(k)(x) = -sqrt(2/pi) int_0^pi h(x(xi)) cos(k xi) d xi.
HVec burgers_drift(const Burgers1D& b, const HVec& x);

// --- 3-D Cahn-Hilliard model on (0, pi)^3, cosine basis -------------------

// Mean-zero space: modes k in {0..K}^3 \ {0}, lambda_k = (k1^2+k2^2+k3^2)^2,
// basis products of c_{k_i} cos(k_i xi_i) with c_0 = sqrt(1/pi),
// c_j = sqrt(2/pi).  Mode order matches make_cahnhilliard3d_model.
struct CahnHilliard3D {
    std::size_t K = 0;
    ScalarFn h;
    int G = 0;  // per axis
    std::vector<std::array<int, 3>> indices;
    SpectralModel model;
};

CahnHilliard3D make_cahnhilliard3d(std::size_t K, ScalarFn h, int G = -1);

// F(x)(xi) = h(x(xi)) - mean_G h(x(.)), analyzed back to coefficients.
HVec cahn_hilliard_drift(const CahnHilliard3D& c, const HVec& x);

// --- H^1_0 Burgers model of the critical form -----------------------------

// Reference space is H^1_0 with basis etilde_k = e_k / k; vectors here hold
// coefficients against etilde_k, so the L^2 sine coefficient of x is u_k / k.
// Drift F(x) = F0(x) + (-A)^{-1/2} B(x) with
//   F0(x) = 1/2 (-A)^{-1/2} d_xi [x^2],   B(x) = h(x(.)) g(|x|).
// Admissibility: sup|h'| * sup|g| <= 1.
struct H01Burgers {
    std::size_t M = 0;
    ScalarFn h;
    ScalarFn g;
    int G = 0;
    SpectralModel model;
    Burgers1D core;  // transform workspace (tables); its h is unused
};

H01Burgers make_h01burgers(std::size_t M, ScalarFn h, ScalarFn g, int G = -1);

HVec h01_f0(const H01Burgers& hb, const HVec& u);
HVec h01_b(const H01Burgers& hb, const HVec& u);
HVec h01_drift(const H01Burgers& hb, const HVec& u);

// (sum_k k^{4s} u_k^2)^{1/2} on L^2 sine coefficients; s = 1/2 recovers
// the H^1_0 norm.
double hs_norm(double s, const HVec& u);

// --- drift adaptors for the simulator -------------------------------------

DriftPtr make_burgers_drift(Burgers1D b);
DriftPtr make_cahn_hilliard_drift(CahnHilliard3D c);
DriftPtr make_h01_drift(H01Burgers hb);

}  // namespace sglab
