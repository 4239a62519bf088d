#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "sglab/cyl_function.hpp"

namespace sglab {

struct GridAxis {
    double lo = -1.0;
    double hi = 1.0;
    int n = 2;  // node count, >= 2

    double spacing() const { return (hi - lo) / (n - 1); }
    double coord(int i) const { return lo + spacing() * i; }
};

// Tensor-grid scalar field on up to 3 axes with multilinear interpolation
// and clamped extrapolation.  This is the function representation used by
// the Picard iteration and the residual/identity checks: cheap pointwise
// evaluation with sup-norm control.
class GridFn {
public:
    GridFn() = default;
    explicit GridFn(std::vector<GridAxis> axes);

    int dim() const { return static_cast<int>(axes_.size()); }
    const std::vector<GridAxis>& axes() const { return axes_; }
    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }

    double& at(int i, int j = 0, int k = 0) { return values_[index(i, j, k)]; }
    double at(int i, int j = 0, int k = 0) const { return values_[index(i, j, k)]; }

    // Multilinear interpolation; arguments outside the box are clamped.
    double operator()(std::span<const double> y) const;

    double max_abs() const {
        double m = 0.0;
        for (double v : values_) m = std::max(m, std::abs(v));
        return m;
    }

    // Fill by evaluating g at every node.
    static GridFn tabulate(std::vector<GridAxis> axes,
                           const std::function<double(std::span<const double>)>& g);

    std::size_t index(int i, int j, int k) const;
    int size(int d) const { return axes_[d].n; }

private:
    std::vector<GridAxis> axes_;
    std::vector<double> values_;
};

// Wrap a grid field as a cylindrical function on the given active
// coordinates.  sup_norm defaults to the grid max (clamping keeps the
// interpolant inside the grid range).
CylFunction make_grid_cyl(std::vector<int> active, GridFn grid, double sup_norm = -1.0);

}  // namespace sglab
