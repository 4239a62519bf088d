#include "sglab/grid_fn.hpp"

#include <memory>

namespace sglab {

GridFn::GridFn(std::vector<GridAxis> axes) : axes_(std::move(axes)) {
    if (axes_.empty() || axes_.size() > 3)
        throw std::invalid_argument("GridFn: 1..3 axes required");
    std::size_t total = 1;
    for (const auto& a : axes_) {
        if (a.n < 2 || !(a.hi > a.lo)) throw std::invalid_argument("GridFn: bad axis");
        total *= static_cast<std::size_t>(a.n);
    }
    values_.assign(total, 0.0);
}

std::size_t GridFn::index(int i, int j, int k) const {
    switch (axes_.size()) {
        case 1: return static_cast<std::size_t>(i);
        case 2: return static_cast<std::size_t>(i) * axes_[1].n + j;
        default:
            return (static_cast<std::size_t>(i) * axes_[1].n + j) * axes_[2].n + k;
    }
}

double GridFn::operator()(std::span<const double> y) const {
    if (static_cast<int>(y.size()) < dim())
        throw std::invalid_argument("GridFn: argument dimension mismatch");
    int i0[3] = {0, 0, 0};
    double w[3] = {0.0, 0.0, 0.0};
    for (int d = 0; d < dim(); ++d) {
        const GridAxis& a = axes_[d];
        double u = (std::clamp(y[d], a.lo, a.hi) - a.lo) / a.spacing();
        int i = std::min(static_cast<int>(u), a.n - 2);
        i0[d] = i;
        w[d] = u - i;
    }
    double acc = 0.0;
    const int corners = 1 << dim();
    for (int c = 0; c < corners; ++c) {
        double wt = 1.0;
        int idx[3] = {i0[0], i0[1], i0[2]};
        for (int d = 0; d < dim(); ++d) {
            if (c & (1 << d)) {
                wt *= w[d];
                idx[d] += 1;
            } else {
                wt *= 1.0 - w[d];
            }
        }
        if (wt != 0.0) acc += wt * values_[index(idx[0], idx[1], idx[2])];
    }
    return acc;
}

GridFn GridFn::tabulate(std::vector<GridAxis> axes,
                        const std::function<double(std::span<const double>)>& g) {
    GridFn f(std::move(axes));
    double y[3];
    const auto& ax = f.axes();
    if (f.dim() == 1) {
        for (int i = 0; i < f.size(0); ++i) {
            y[0] = ax[0].coord(i);
            f.at(i) = g(std::span<const double>(y, 1));
        }
    } else if (f.dim() == 2) {
        for (int i = 0; i < f.size(0); ++i)
            for (int j = 0; j < f.size(1); ++j) {
                y[0] = ax[0].coord(i);
                y[1] = ax[1].coord(j);
                f.at(i, j) = g(std::span<const double>(y, 2));
            }
    } else {
        for (int i = 0; i < f.size(0); ++i)
            for (int j = 0; j < f.size(1); ++j)
                for (int k = 0; k < f.size(2); ++k) {
                    y[0] = ax[0].coord(i);
                    y[1] = ax[1].coord(j);
                    y[2] = ax[2].coord(k);
                    f.at(i, j, k) = g(std::span<const double>(y, 3));
                }
    }
    return f;
}

CylFunction make_grid_cyl(std::vector<int> active, GridFn grid, double sup_norm) {
    if (static_cast<int>(active.size()) != grid.dim())
        throw std::invalid_argument("make_grid_cyl: active/grid dimension mismatch");
    double s = sup_norm >= 0.0 ? sup_norm : grid.max_abs();
    auto g = std::make_shared<GridFn>(std::move(grid));
    return CylFunction(std::move(active), s, "grid",
                       [g](std::span<const double> y) { return (*g)(y); });
}

}  // namespace sglab
