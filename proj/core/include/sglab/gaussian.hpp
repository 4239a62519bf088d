#pragma once

#include <functional>
#include <span>
#include <vector>

#include "sglab/hvec.hpp"
#include "sglab/quadrature.hpp"
#include "sglab/rng.hpp"

namespace sglab {

// count independent draws from the diagonal Gaussian N(0, diag(cov)).
// Draw j uses stream_id = seed.stream_id + j, so ensembles are bitwise
// identical however the work is split.
std::vector<HVec> sample_gaussian(const std::vector<double>& cov, SeedSpec seed, int count);

// Tensor-product Gauss-Hermite approximation of the integral of g over
// N(0, diag(cov)) in dimension dim <= 3.  Exact for polynomial g of
// per-coordinate degree < 2*order.
double gh_integrate(int dim, std::span<const double> cov,
                    const std::function<double(std::span<const double>)>& g, int order = 40);

constexpr int kDefaultGhOrder = 40;

}  // namespace sglab
