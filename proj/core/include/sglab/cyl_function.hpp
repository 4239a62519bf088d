#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sglab/hvec.hpp"

namespace sglab {

// Bounded cylindrical test function: f(x) = f~(x^(i1), ..., x^(in)) for a
// profile f~ on the n <= 3 active coordinates, with known sup norm.
// Members of the closed parametric family carry closed-form first and
// second derivatives where the shape allows; grid-backed instances
// (see grid_fn.hpp) plug in through the same interface.
class CylFunction {
public:
    using Fn = std::function<double(std::span<const double>)>;
    using DFn = std::function<double(int, std::span<const double>)>;
    using D2Fn = std::function<double(int, int, std::span<const double>)>;

    CylFunction() = default;
    CylFunction(std::vector<int> active_coords, double sup_norm, std::string shape, Fn f,
                DFn df = nullptr, D2Fn d2f = nullptr)
        : active_(std::move(active_coords)),
          sup_norm_(sup_norm),
          shape_(std::move(shape)),
          f_(std::move(f)),
          df_(std::move(df)),
          d2f_(std::move(d2f)) {
        if (active_.empty() || active_.size() > 3)
            throw std::invalid_argument("CylFunction: 1..3 active coordinates required");
        for (int k : active_)
            if (k < 1) throw std::invalid_argument("CylFunction: coordinate indices are 1-based");
    }

    const std::vector<int>& active_coords() const { return active_; }
    int n_active() const { return static_cast<int>(active_.size()); }
    double sup_norm() const { return sup_norm_; }
    const std::string& shape() const { return shape_; }
    bool has_derivatives() const { return static_cast<bool>(df_); }
    bool has_second_derivatives() const { return static_cast<bool>(d2f_); }

    // Evaluate the profile on active-coordinate values.
    double value(std::span<const double> y) const { return f_(y); }

    // d/dy_j of the profile, j = 0..n-1 (active-local index).
    double deriv(int j, std::span<const double> y) const {
        if (!df_) throw std::logic_error("CylFunction: no closed-form derivative for " + shape_);
        return df_(j, y);
    }

    double deriv2(int i, int j, std::span<const double> y) const {
        if (!d2f_)
            throw std::logic_error("CylFunction: no closed-form second derivative for " + shape_);
        return d2f_(i, j, y);
    }

    // Evaluate at a full H vector by extracting the active coordinates.
    double value_at(const HVec& x) const {
        double y[3];
        extract(x, y);
        return f_(std::span<const double>(y, active_.size()));
    }

    void extract(const HVec& x, double* y) const {
        for (std::size_t j = 0; j < active_.size(); ++j) {
            std::size_t k = static_cast<std::size_t>(active_[j]);
            y[j] = k <= x.size() ? x[k - 1] : 0.0;
        }
    }

private:
    std::vector<int> active_;
    double sup_norm_ = 0.0;
    std::string shape_;
    Fn f_;
    DFn df_;
    D2Fn d2f_;
};

// f = c (constant; active coordinate list kept for bookkeeping).
CylFunction make_constant(std::vector<int> active, double c);

// f~(y) = amp * cos(a.y + phase), sup norm |amp|.
CylFunction make_cosine(std::vector<int> active, std::vector<double> freqs, double phase = 0.0,
                        double amp = 1.0);

// f~(y) = amp * exp(-|y - center|^2 / (2 width^2)).
CylFunction make_gaussian_bump(std::vector<int> active, std::vector<double> center, double width,
                               double amp = 1.0);

// f~(y) = amp * prod_j tanh(a_j y_j).
CylFunction make_tanh_product(std::vector<int> active, std::vector<double> scales,
                              double amp = 1.0);

// Smoothed step in the first active coordinate:
// f~(y) = amp * tanh(y_1 / delta); sup norm |amp|.
CylFunction make_indicator_smooth(std::vector<int> active, double delta, double amp = 1.0);

// Kink profile min(|y_1|, clip); sup norm clip.  No derivatives.
CylFunction make_abs_clip(std::vector<int> active, double clip);

// f~(y) = y_1^2 with exact derivatives.  Unbounded (sup norm is +inf);
// meant for generator calculus checks, not for sup-norm contracts.
CylFunction make_square(std::vector<int> active);

// Named lookup used by configs: cosine | gaussian-bump | tanh-product |
// indicator-smooth | abs-clip, with a flat parameter list.
CylFunction make_cyl_function(const std::string& shape, std::vector<int> active,
                              const std::vector<double>& params);

}  // namespace sglab
