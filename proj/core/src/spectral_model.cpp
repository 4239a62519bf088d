#include "sglab/spectral_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sglab {

namespace {

// 1 - e^{-x} without cancellation for small x.
double one_minus_exp_neg(double x) { return -std::expm1(-x); }

// Maximand of the C1 supremum: sqrt(2) u e^{-u^2} (1 - e^{-2u^2})^{-1/2}.
// Decreasing on (0, inf) with limit 1 at u -> 0+.
double c1_maximand(double u) {
    double u2 = u * u;
    return std::sqrt(2.0) * u * std::exp(-u2) / std::sqrt(one_minus_exp_neg(2.0 * u2));
}

}  // namespace

SpectralModel::SpectralModel(std::vector<double> lambdas) : lambdas_(std::move(lambdas)) {
    if (lambdas_.empty()) throw std::invalid_argument("SpectralModel: empty eigenvalue list");
    for (double l : lambdas_)
        if (!(l > 0.0)) throw std::invalid_argument("SpectralModel: eigenvalues must be positive");
    omega_ = *std::min_element(lambdas_.begin(), lambdas_.end());
}

double SpectralModel::partial_trace_inv() const {
    double s = 0.0;
    for (double l : lambdas_) s += 1.0 / l;
    return s;
}

HVec SpectralModel::semigroup_apply(double t, const HVec& x) const {
    if (t < 0.0) throw std::invalid_argument("semigroup_apply: t must be nonnegative");
    if (x.size() != M()) throw std::invalid_argument("semigroup_apply: dimension mismatch");
    HVec y(M());
    for (std::size_t k = 0; k < M(); ++k) y[k] = std::exp(-lambdas_[k] * t) * x[k];
    return y;
}

HVec SpectralModel::frac_power_apply(double gamma, const HVec& x) const {
    if (x.size() != M()) throw std::invalid_argument("frac_power_apply: dimension mismatch");
    HVec y(M());
    for (std::size_t k = 0; k < M(); ++k) y[k] = std::pow(lambdas_[k], gamma) * x[k];
    return y;
}

double SpectralModel::smoothing_norm(double t) const {
    if (!(t > 0.0)) throw std::invalid_argument("smoothing_norm: t must be positive");
    double m = 0.0;
    for (double l : lambdas_) m = std::max(m, std::sqrt(l) * std::exp(-l * t));
    return m;
}

std::vector<double> SpectralModel::covariance_qt(double t) const {
    if (t < 0.0) throw std::invalid_argument("covariance_qt: t must be nonnegative");
    std::vector<double> q(M());
    for (std::size_t k = 0; k < M(); ++k)
        q[k] = one_minus_exp_neg(2.0 * lambdas_[k] * t) / (2.0 * lambdas_[k]);
    return q;
}

std::vector<double> SpectralModel::invariant_covariance() const {
    std::vector<double> s(M());
    for (std::size_t k = 0; k < M(); ++k) s[k] = 1.0 / (2.0 * lambdas_[k]);
    return s;
}

std::vector<double> SpectralModel::lambda_t(double t) const {
    if (!(t > 0.0)) throw std::invalid_argument("lambda_t: t must be positive");
    std::vector<double> v(M());
    for (std::size_t k = 0; k < M(); ++k) {
        double l = lambdas_[k];
        // expm1 form keeps the 1/sqrt(t) singularity free of cancellation
        // when lambda_k * t is tiny.
        v[k] = std::sqrt(2.0 * l) * std::exp(-t * l) / std::sqrt(one_minus_exp_neg(2.0 * t * l));
    }
    return v;
}

HVec SpectralModel::gamma_t(double t, const HVec& z) const {
    if (t < 0.0) throw std::invalid_argument("gamma_t: t must be nonnegative");
    if (z.size() != M()) throw std::invalid_argument("gamma_t: dimension mismatch");
    HVec y(M());
    for (std::size_t k = 0; k < M(); ++k)
        y[k] = one_minus_exp_neg(lambdas_[k] * t) / std::sqrt(lambdas_[k]) * z[k];
    return y;
}

double SpectralModel::qt_invsqrt_gamma_norm(double t) const {
    if (!(t > 0.0)) throw std::invalid_argument("qt_invsqrt_gamma_norm: t must be positive");
    double m = 0.0;
    for (double l : lambdas_) {
        double e = std::exp(-t * l);
        m = std::max(m, std::sqrt(2.0) * std::sqrt((1.0 - e) / (1.0 + e)));
    }
    return m;
}

Constants SpectralModel::derive_constants() const {
    // Grid scan on (0, 10] starting near zero (the sup sits at u -> 0+),
    // then golden-section refinement around the best grid point.
    constexpr int kGridPoints = 100000;
    constexpr double kLo = 1e-8, kHi = 10.0;
    double best_u = kLo, best_v = c1_maximand(kLo);
    for (int i = 1; i < kGridPoints; ++i) {
        double u = kLo + (kHi - kLo) * static_cast<double>(i) / (kGridPoints - 1);
        double v = c1_maximand(u);
        if (v > best_v) {
            best_v = v;
            best_u = u;
        }
    }
    double step = (kHi - kLo) / (kGridPoints - 1);
    double a = std::max(kLo * 0.5, best_u - step), b = best_u + step;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = c1_maximand(x1), f2 = c1_maximand(x2);
    while (b - a > 1e-10) {
        if (f1 > f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = c1_maximand(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = c1_maximand(x2);
        }
    }
    Constants c;
    c.c1 = std::max(best_v, std::max(f1, f2));
    c.c2 = std::sqrt(2.0) * std::numbers::pi * std::sqrt((1.0 + omega_) / omega_) + 4.0 * c.c1;
    c.pi_over_sqrt2 = std::numbers::pi / std::sqrt(2.0);
    return c;
}

SpectralModel make_burgers1d_model(std::size_t M) {
    std::vector<double> l(M);
    for (std::size_t k = 0; k < M; ++k) l[k] = static_cast<double>((k + 1) * (k + 1));
    return SpectralModel(std::move(l));
}

SpectralModel make_h01burgers_model(std::size_t M) {
    // Same k^2 spectrum; the basis rescaling e_k/k lives in the drift and
    // noise conventions, not in the diagonal operator.
    return make_burgers1d_model(M);
}

std::vector<std::array<int, 3>> cahnhilliard3d_indices(std::size_t K) {
    std::vector<std::array<int, 3>> idx;
    int Ki = static_cast<int>(K);
    for (int k1 = 0; k1 <= Ki; ++k1)
        for (int k2 = 0; k2 <= Ki; ++k2)
            for (int k3 = 0; k3 <= Ki; ++k3) {
                if (k1 == 0 && k2 == 0 && k3 == 0) continue;
                idx.push_back({k1, k2, k3});
            }
    std::stable_sort(idx.begin(), idx.end(), [](const auto& a, const auto& b) {
        long sa = static_cast<long>(a[0]) * a[0] + static_cast<long>(a[1]) * a[1] +
                  static_cast<long>(a[2]) * a[2];
        long sb = static_cast<long>(b[0]) * b[0] + static_cast<long>(b[1]) * b[1] +
                  static_cast<long>(b[2]) * b[2];
        if (sa != sb) return sa < sb;
        return a < b;  // lexicographic tie-break keeps the order reproducible
    });
    return idx;
}

SpectralModel make_cahnhilliard3d_model(std::size_t K) {
    auto idx = cahnhilliard3d_indices(K);
    std::vector<double> l;
    l.reserve(idx.size());
    for (const auto& k : idx) {
        double s = static_cast<double>(k[0]) * k[0] + static_cast<double>(k[1]) * k[1] +
                   static_cast<double>(k[2]) * k[2];
        l.push_back(s * s);
    }
    return SpectralModel(std::move(l));
}

SpectralModel make_model_by_family(const std::string& family, std::size_t M) {
    if (family == "burgers1d") return make_burgers1d_model(M);
    if (family == "cahnhilliard3d") return make_cahnhilliard3d_model(M);
    if (family == "h01burgers") return make_h01burgers_model(M);
    throw std::invalid_argument("unknown model family: " + family);
}

}  // namespace sglab
