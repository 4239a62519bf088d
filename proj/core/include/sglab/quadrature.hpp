#pragma once

#include <vector>

namespace sglab {

// Quadrature rule with positive weights.  For the Gauss-Hermite rule the
// weights are normalized against the standard Gaussian density, so they
// sum to 1 and the rule is exact for polynomials of degree < 2*order.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    int order = 0;
};

// Gauss-Hermite rule in probabilists' form: sum_i w_i g(x_i) ~ E[g(Z)],
// Z standard normal.
QuadratureRule gauss_hermite(int order);

// Gauss-Legendre rule on [a, b].
QuadratureRule gauss_legendre(int order, double a, double b);

}  // namespace sglab
