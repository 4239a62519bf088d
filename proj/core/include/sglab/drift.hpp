#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sglab/cyl_function.hpp"
#include "sglab/hvec.hpp"
#include "sglab/spectral_model.hpp"

namespace sglab {

// Drift descriptor F: H -> H for the equation dX = AX dt + (-A)^{1/2} F(X) dt + dW.
// Bounded kinds expose a sup norm; linear-growth kinds expose C_F with
// |F(x)| <= C_F (1 + |x|).
class Drift {
public:
    virtual ~Drift() = default;

    virtual HVec eval(const HVec& x) const = 0;
    virtual std::string kind() const = 0;

    // sup_x |F(x)|_H when bounded; nullopt for linear-growth kinds.
    virtual std::optional<double> sup_norm() const { return std::nullopt; }

    // Linear-growth constant C_F; always available.
    virtual double growth_const() const = 0;

    // Bound on sup_{|x| <= r} |F(x)|; superlinear kinds override.
    virtual double local_bound(double r) const { return growth_const() * (1.0 + r); }

    // Active coordinates when the drift is cylindrical (depends on and is
    // supported by finitely many coordinates); nullptr otherwise.
    virtual const std::vector<int>* active() const { return nullptr; }

    // sup_x |F(x) - z|_H when the kind can certify it (condition for the
    // fixed-point solver); nullopt means "estimate it numerically".
    virtual std::optional<double> sup_dist(const HVec& z) const { return std::nullopt; }
};

using DriftPtr = std::shared_ptr<const Drift>;

DriftPtr make_zero_drift(std::size_t M);
DriftPtr make_constant_drift(HVec z);

// F(x) = z + sum_j profile_j(x^(a_j)) e_{a_j} with profile_j = amp_j * tanh.
// sup |F - z| = |amps|_2 (certified), so amps with |amps| < 1/4 satisfy
// the fixed-point condition by construction.
DriftPtr make_near_constant_drift(HVec z, std::vector<int> active, std::vector<double> amps);

// Cutoff truncation F_n(y) = F(y) eta(|y|_H / n): eta = 1 on [0,1],
// 0 on [2,inf), cubic-smooth in between.  Bounded with sup <= 2n * C_F + sup-part.
DriftPtr make_truncated_drift(DriftPtr inner, double n);

// Gaussian mollification F_n(x) = int F(e^{A/n} x + y) dN(0, Q_{1/n})(dy).
// Cylindrical drifts are smoothed by tensor quadrature; general drifts by
// MC with a fixed internal seed (common random numbers across x).
DriftPtr mollify_drift(const SpectralModel& model, DriftPtr F, int n, int quad_order = 20,
                       int mc_samples = 4000);

// Composition pi_m o F o pi_m used by the finite-dimensional equations.
DriftPtr make_projected_drift(DriftPtr inner, std::size_t m);

}  // namespace sglab
