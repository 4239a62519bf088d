#include "sglab/cyl_function.hpp"

#include <limits>

namespace sglab {

CylFunction make_constant(std::vector<int> active, double c) {
    return CylFunction(
        std::move(active), std::abs(c), "constant",
        [c](std::span<const double>) { return c; },
        [](int, std::span<const double>) { return 0.0; },
        [](int, int, std::span<const double>) { return 0.0; });
}

CylFunction make_cosine(std::vector<int> active, std::vector<double> freqs, double phase,
                        double amp) {
    if (freqs.size() != active.size())
        throw std::invalid_argument("make_cosine: one frequency per active coordinate");
    auto arg = [freqs, phase](std::span<const double> y) {
        double a = phase;
        for (std::size_t j = 0; j < freqs.size(); ++j) a += freqs[j] * y[j];
        return a;
    };
    return CylFunction(
        std::move(active), std::abs(amp), "cosine",
        [arg, amp](std::span<const double> y) { return amp * std::cos(arg(y)); },
        [arg, freqs, amp](int j, std::span<const double> y) {
            return -amp * freqs[j] * std::sin(arg(y));
        },
        [arg, freqs, amp](int i, int j, std::span<const double> y) {
            return -amp * freqs[i] * freqs[j] * std::cos(arg(y));
        });
}

CylFunction make_gaussian_bump(std::vector<int> active, std::vector<double> center, double width,
                               double amp) {
    if (center.size() != active.size())
        throw std::invalid_argument("make_gaussian_bump: one center per active coordinate");
    if (!(width > 0.0)) throw std::invalid_argument("make_gaussian_bump: width must be positive");
    const double iw2 = 1.0 / (width * width);
    auto val = [center, iw2, amp](std::span<const double> y) {
        double q = 0.0;
        for (std::size_t j = 0; j < center.size(); ++j) {
            double d = y[j] - center[j];
            q += d * d;
        }
        return amp * std::exp(-0.5 * q * iw2);
    };
    return CylFunction(
        std::move(active), std::abs(amp), "gaussian-bump", val,
        [center, iw2, val](int j, std::span<const double> y) {
            return -(y[j] - center[j]) * iw2 * val(y);
        },
        [center, iw2, val](int i, int j, std::span<const double> y) {
            double di = (y[i] - center[i]) * iw2, dj = (y[j] - center[j]) * iw2;
            double v = val(y);
            return (di * dj - (i == j ? iw2 : 0.0)) * v;
        });
}

CylFunction make_tanh_product(std::vector<int> active, std::vector<double> scales, double amp) {
    if (scales.size() != active.size())
        throw std::invalid_argument("make_tanh_product: one scale per active coordinate");
    auto val = [scales, amp](std::span<const double> y) {
        double p = amp;
        for (std::size_t j = 0; j < scales.size(); ++j) p *= std::tanh(scales[j] * y[j]);
        return p;
    };
    auto dval = [scales, amp](int j, std::span<const double> y) {
        double p = amp;
        for (std::size_t l = 0; l < scales.size(); ++l) {
            double t = std::tanh(scales[l] * y[l]);
            if (static_cast<int>(l) == j) {
                double c = std::cosh(scales[l] * y[l]);
                p *= scales[l] / (c * c);
            } else {
                p *= t;
            }
        }
        return p;
    };
    auto d2val = [scales, amp](int i, int j, std::span<const double> y) {
        double p = amp;
        for (std::size_t l = 0; l < scales.size(); ++l) {
            double sl = scales[l], t = std::tanh(sl * y[l]);
            double c = std::cosh(sl * y[l]);
            double sech2 = 1.0 / (c * c);
            int li = static_cast<int>(l);
            if (li == i && li == j)
                p *= -2.0 * sl * sl * t * sech2;
            else if (li == i || li == j)
                p *= sl * sech2;
            else
                p *= t;
        }
        return p;
    };
    return CylFunction(std::move(active), std::abs(amp), "tanh-product", val, dval, d2val);
}

CylFunction make_indicator_smooth(std::vector<int> active, double delta, double amp) {
    if (!(delta > 0.0))
        throw std::invalid_argument("make_indicator_smooth: delta must be positive");
    const double id = 1.0 / delta;
    return CylFunction(
        std::move(active), std::abs(amp), "indicator-smooth",
        [id, amp](std::span<const double> y) { return amp * std::tanh(y[0] * id); },
        [id, amp](int j, std::span<const double> y) {
            if (j != 0) return 0.0;
            double c = std::cosh(y[0] * id);
            return amp * id / (c * c);
        },
        [id, amp](int i, int j, std::span<const double> y) {
            if (i != 0 || j != 0) return 0.0;
            double t = std::tanh(y[0] * id);
            double c = std::cosh(y[0] * id);
            return -2.0 * amp * id * id * t / (c * c);
        });
}

CylFunction make_abs_clip(std::vector<int> active, double clip) {
    if (!(clip > 0.0)) throw std::invalid_argument("make_abs_clip: clip must be positive");
    return CylFunction(std::move(active), clip, "abs-clip",
                       [clip](std::span<const double> y) { return std::min(std::abs(y[0]), clip); });
}

CylFunction make_square(std::vector<int> active) {
    return CylFunction(
        std::move(active), std::numeric_limits<double>::infinity(), "square",
        [](std::span<const double> y) { return y[0] * y[0]; },
        [](int j, std::span<const double> y) { return j == 0 ? 2.0 * y[0] : 0.0; },
        [](int i, int j, std::span<const double>) { return (i == 0 && j == 0) ? 2.0 : 0.0; });
}

CylFunction make_cyl_function(const std::string& shape, std::vector<int> active,
                              const std::vector<double>& params) {
    const std::size_t n = active.size();
    if (shape == "cosine") {
        std::vector<double> freqs(params.begin(), params.begin() + std::min(params.size(), n));
        freqs.resize(n, 1.0);
        double phase = params.size() > n ? params[n] : 0.0;
        double amp = params.size() > n + 1 ? params[n + 1] : 1.0;
        return make_cosine(std::move(active), std::move(freqs), phase, amp);
    }
    if (shape == "gaussian-bump") {
        std::vector<double> center(n, 0.0);
        for (std::size_t j = 0; j < n && j < params.size(); ++j) center[j] = params[j];
        double width = params.size() > n ? params[n] : 1.0;
        double amp = params.size() > n + 1 ? params[n + 1] : 1.0;
        return make_gaussian_bump(std::move(active), std::move(center), width, amp);
    }
    if (shape == "tanh-product") {
        std::vector<double> scales(n, 1.0);
        for (std::size_t j = 0; j < n && j < params.size(); ++j) scales[j] = params[j];
        double amp = params.size() > n ? params[n] : 1.0;
        return make_tanh_product(std::move(active), std::move(scales), amp);
    }
    if (shape == "indicator-smooth") {
        double delta = params.empty() ? 0.5 : params[0];
        double amp = params.size() > 1 ? params[1] : 1.0;
        return make_indicator_smooth(std::move(active), delta, amp);
    }
    if (shape == "abs-clip") {
        double clip = params.empty() ? 1.0 : params[0];
        return make_abs_clip(std::move(active), clip);
    }
    if (shape == "constant") {
        double c = params.empty() ? 1.0 : params[0];
        return make_constant(std::move(active), c);
    }
    throw std::invalid_argument("unknown cylindrical shape: " + shape);
}

}  // namespace sglab
