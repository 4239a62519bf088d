#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "sglab/hvec.hpp"

namespace sglab {

// Constants attached to a spectral model:
//   C1 = sqrt(2) * sup_{u>=0} [ u e^{-u^2} (1 - e^{-2u^2})^{-1/2} ]
//   C2 = sqrt(2) * pi * (1 + omega)^{1/2} / omega^{1/2} + 4 C1
// together with the universal gradient-bound constant pi/sqrt(2).
struct Constants {
    double c1 = 0.0;
    double c2 = 0.0;
    double pi_over_sqrt2 = 0.0;
};

// Truncated diagonal negative-definite operator A: A e_k = -lambda_k e_k
// with lambda_k > 0, k = 1..M.  Everything downstream (semigroup,
// covariances, resolvent, simulator) is diagonal in this eigenbasis.
class SpectralModel {
public:
    explicit SpectralModel(std::vector<double> lambdas);

    std::size_t M() const { return lambdas_.size(); }
    const std::vector<double>& lambdas() const { return lambdas_; }
    double lambda(std::size_t k) const { return lambdas_.at(k - 1); }  // 1-based
    double omega() const { return omega_; }

    // Partial trace of A^{-1}: sum_{k<=M} 1/lambda_k.  Finite by
    // construction; exposed so trace-class decay is inspectable.
    double partial_trace_inv() const;

    // e^{tA} x, coordinate-wise e^{-lambda_k t} x^(k).  Requires t >= 0.
    HVec semigroup_apply(double t, const HVec& x) const;

    // (-A)^gamma x, coordinate-wise lambda_k^gamma x^(k).  gamma may be
    // negative; finite M keeps every power bounded.
    HVec frac_power_apply(double gamma, const HVec& x) const;

    // ||(-A)^{1/2} e^{tA}|| = max_k lambda_k^{1/2} e^{-lambda_k t}, t > 0.
    double smoothing_norm(double t) const;

    // Diagonal of Q_t = (-2A)^{-1}(I - e^{2tA}):
    // entry k = (1 - e^{-2 lambda_k t}) / (2 lambda_k), t >= 0.
    std::vector<double> covariance_qt(double t) const;

    // Diagonal of the invariant covariance S = -A^{-1}/2: entry 1/(2 lambda_k).
    std::vector<double> invariant_covariance() const;

    // Diagonal of Lambda_t = Q_t^{-1/2} e^{tA}:
    // entry k = sqrt(2) lambda_k^{1/2} e^{-t lambda_k} (1 - e^{-2 t lambda_k})^{-1/2}.
    // Requires t > 0; max entry <= C1 / sqrt(t).
    std::vector<double> lambda_t(double t) const;

    // Gamma_t z = (-A)^{-1/2}[z - e^{tA} z]:
    // coordinate k = (1 - e^{-t lambda_k}) lambda_k^{-1/2} z^(k), t >= 0.
    HVec gamma_t(double t, const HVec& z) const;

    // ||Q_t^{-1/2} Gamma_t|| = max_k sqrt(2) (1-e^{-t lambda_k})^{1/2}
    //                                       / (1+e^{-t lambda_k})^{1/2} <= sqrt(2).
    double qt_invsqrt_gamma_norm(double t) const;

    Constants derive_constants() const;

private:
    std::vector<double> lambdas_;
    double omega_;
};

// Model families used throughout: Dirichlet Laplacian on (0,pi)
// (lambda_k = k^2), the 3-D bilaplacian with Neumann conditions
// (lambda_k = |k|^4, k in {0..K}^3 \ {0}, sorted ascending), and the
// H^1_0-referenced Burgers operator (same k^2 spectrum on the
// rescaled basis e_k / k).
SpectralModel make_burgers1d_model(std::size_t M);
SpectralModel make_cahnhilliard3d_model(std::size_t K);
SpectralModel make_h01burgers_model(std::size_t M);

// For the Cahn-Hilliard family: the multi-indices (k1,k2,k3), sorted in
// the same ascending-eigenvalue order used by make_cahnhilliard3d_model.
std::vector<std::array<int, 3>> cahnhilliard3d_indices(std::size_t K);

SpectralModel make_model_by_family(const std::string& family, std::size_t M);

}  // namespace sglab
