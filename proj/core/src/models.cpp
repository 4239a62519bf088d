#include "sglab/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sglab {

namespace {

constexpr double kPi = std::numbers::pi;

double clamp_sym(double s, double c) { return std::clamp(s, -c, c); }

}  // namespace

ScalarFn make_scalar_fn(const std::string& name, const std::vector<double>& params) {
    auto p = [&](std::size_t i, double dflt) { return i < params.size() ? params[i] : dflt; };
    ScalarFn s;
    s.name = name;
    if (name == "identity") {
        s.f = [](double x) { return x; };
        s.growth_const = 1.0;
        s.deriv_sup = 1.0;
    } else if (name == "linear-clip") {
        double c = p(0, 1.0);
        s.f = [c](double x) { return clamp_sym(x, c); };
        s.growth_const = std::min(1.0, c);
        s.sup = c;
        s.deriv_sup = 1.0;
    } else if (name == "tanh") {
        double amp = p(0, 1.0);
        s.f = [amp](double x) { return amp * std::tanh(x); };
        s.growth_const = std::abs(amp);
        s.sup = std::abs(amp);
        s.deriv_sup = std::abs(amp);
    } else if (name == "scaled-cubic-clip") {
        double scale = p(0, 1.0), clip = p(1, 1.0);
        s.f = [scale, clip](double x) { return clamp_sym(scale * x * x * x, clip); };
        s.growth_const = clip;
        s.sup = clip;
        s.deriv_sup = 3.0 * std::cbrt(scale * clip * clip);  // |3 s x^2| at the clip knee
    } else if (name == "classical-burgers") {
        s.f = [](double x) { return 0.5 * x * x; };
        s.growth_const = 0.0;  // superlinear; admitted via truncation only
    } else if (name == "cahn-hilliard-cubic") {
        s.f = [](double x) { return x * x * x - x; };
        s.growth_const = 0.0;  // superlinear; admitted via truncation only
    } else {
        throw std::invalid_argument("make_scalar_fn: unknown name " + name);
    }
    return s;
}

// --- Burgers -------------------------------------------------------------

Burgers1D make_burgers1d(std::size_t M, ScalarFn h, int G) {
    if (M < 1) throw std::invalid_argument("make_burgers1d: M >= 1 required");
    if (G < 0) G = static_cast<int>(4 * M);
    if (G < static_cast<int>(4 * M))
        throw std::invalid_argument("make_burgers1d: grid too coarse, need G >= 4M");
    Burgers1D b{M, std::move(h), G, make_burgers1d_model(M), {}, {}};
    b.sin_tab.resize(M * static_cast<std::size_t>(G));
    b.cos_tab.resize(M * static_cast<std::size_t>(G));
    for (std::size_t k = 1; k <= M; ++k)
        for (int j = 0; j < G; ++j) {
            double xi = (j + 0.5) * kPi / G;
            b.sin_tab[(k - 1) * G + j] = std::sin(k * xi);
            b.cos_tab[(k - 1) * G + j] = std::cos(k * xi);
        }
    return b;
}

std::vector<double> burgers_synthesize(const Burgers1D& b, const HVec& x) {
    std::vector<double> vals(b.G, 0.0);
    double c = std::sqrt(2.0 / kPi);
    for (std::size_t k = 1; k <= b.M && k <= x.size(); ++k) {
        double a = c * x[k - 1];
        if (a == 0.0) continue;
        const double* row = &b.sin_tab[(k - 1) * b.G];
        for (int j = 0; j < b.G; ++j) vals[j] += a * row[j];
    }
    return vals;
}

HVec burgers_analyze(const Burgers1D& b, const std::vector<double>& vals) {
    HVec out(b.M, 0.0);
    double w = std::sqrt(2.0 / kPi) * kPi / b.G;  // midpoint weight times basis norm
    for (std::size_t k = 1; k <= b.M; ++k) {
        const double* row = &b.sin_tab[(k - 1) * b.G];
        double acc = 0.0;
        for (int j = 0; j < b.G; ++j) acc += vals[j] * row[j];
        out[k - 1] = w * acc;
    }
    return out;
}

HVec burgers_drift(const Burgers1D& b, const HVec& x) {
    std::vector<double> vals = burgers_synthesize(b, x);
    for (double& v : vals) v = b.h(v);
    HVec out(b.M, 0.0);
    double w = std::sqrt(2.0 / kPi) * kPi / b.G;
    for (std::size_t k = 1; k <= b.M; ++k) {
        const double* row = &b.cos_tab[(k - 1) * b.G];
        double acc = 0.0;
        for (int j = 0; j < b.G; ++j) acc += vals[j] * row[j];
        out[k - 1] = -w * acc;
    }
    return out;
}

// --- Cahn-Hilliard -------------------------------------------------------

CahnHilliard3D make_cahnhilliard3d(std::size_t K, ScalarFn h, int G) {
    if (K < 1) throw std::invalid_argument("make_cahnhilliard3d: K >= 1 required");
    if (G < 0) G = static_cast<int>(4 * K);
    if (G < static_cast<int>(4 * K))
        throw std::invalid_argument("make_cahnhilliard3d: grid too coarse, need G >= 4K per axis");
    return CahnHilliard3D{K, std::move(h), G, cahnhilliard3d_indices(K),
                          make_cahnhilliard3d_model(K)};
}

HVec cahn_hilliard_drift(const CahnHilliard3D& c, const HVec& x) {
    const int G = c.G;
    const std::size_t K = c.K;
    // per-axis tables: cosk[k][j] = c_k cos(k xi_j)
    std::vector<std::vector<double>> cosk(K + 1, std::vector<double>(G));
    for (std::size_t k = 0; k <= K; ++k) {
        double ck = k == 0 ? std::sqrt(1.0 / kPi) : std::sqrt(2.0 / kPi);
        for (int j = 0; j < G; ++j) cosk[k][j] = ck * std::cos(k * (j + 0.5) * kPi / G);
    }
    std::vector<double> vals(static_cast<std::size_t>(G) * G * G, 0.0);
    for (std::size_t m = 0; m < c.indices.size() && m < x.size(); ++m) {
        if (x[m] == 0.0) continue;
        auto [k1, k2, k3] = c.indices[m];
        for (int a = 0; a < G; ++a)
            for (int b = 0; b < G; ++b) {
                double ab = x[m] * cosk[k1][a] * cosk[k2][b];
                double* slice = &vals[(static_cast<std::size_t>(a) * G + b) * G];
                for (int d = 0; d < G; ++d) slice[d] += ab * cosk[k3][d];
            }
    }
    double mean = 0.0;
    for (double& v : vals) {
        v = c.h(v);
        mean += v;
    }
    mean /= vals.size();
    for (double& v : vals) v -= mean;
    double w = std::pow(kPi / G, 3);  // midpoint cell volume
    HVec out(c.indices.size(), 0.0);
    for (std::size_t m = 0; m < c.indices.size(); ++m) {
        auto [k1, k2, k3] = c.indices[m];
        double acc = 0.0;
        for (int a = 0; a < G; ++a)
            for (int b = 0; b < G; ++b) {
                const double* slice = &vals[(static_cast<std::size_t>(a) * G + b) * G];
                double ab = cosk[k1][a] * cosk[k2][b];
                double inner = 0.0;
                for (int d = 0; d < G; ++d) inner += slice[d] * cosk[k3][d];
                acc += ab * inner;
            }
        out[m] = w * acc;
    }
    return out;
}

// --- H^1_0 Burgers -------------------------------------------------------

H01Burgers make_h01burgers(std::size_t M, ScalarFn h, ScalarFn g, int G) {
    if (!h.deriv_sup || !g.sup || *h.deriv_sup * *g.sup > 1.0 + 1e-12)
        throw std::invalid_argument("make_h01burgers: need sup|h'| * sup|g| <= 1");
    Burgers1D core = make_burgers1d(M, make_scalar_fn("identity"), G);
    int Gv = core.G;
    return H01Burgers{M, std::move(h), std::move(g), Gv, make_h01burgers_model(M),
                      std::move(core)};
}

namespace {

// L^2 sine coefficients of x from H^1_0 coefficients u (x_k = u_k / k).
HVec l2_of_h1(const HVec& u) {
    HVec x(u.size());
    for (std::size_t k = 1; k <= u.size(); ++k) x[k - 1] = u[k - 1] / static_cast<double>(k);
    return x;
}

}  // namespace

HVec h01_f0(const H01Burgers& hb, const HVec& u) {
    std::vector<double> vals = burgers_synthesize(hb.core, l2_of_h1(u));
    // F0 coefficient against etilde_k is k times the L^2 coefficient of
    // (-A)^{-1/2} d_xi [x^2 / 2], i.e. k times the Burgers drift with
    // h(s) = s^2 / 2.
    for (double& v : vals) v = 0.5 * v * v;
    HVec out(hb.M, 0.0);
    double w = std::sqrt(2.0 / kPi) * kPi / hb.G;
    for (std::size_t k = 1; k <= hb.M; ++k) {
        const double* row = &hb.core.cos_tab[(k - 1) * hb.G];
        double acc = 0.0;
        for (int j = 0; j < hb.G; ++j) acc += vals[j] * row[j];
        out[k - 1] = -static_cast<double>(k) * w * acc;
    }
    return out;
}

HVec h01_b(const H01Burgers& hb, const HVec& u) {
    std::vector<double> vals = burgers_synthesize(hb.core, l2_of_h1(u));
    double gv = hb.g(norm(u));
    for (double& v : vals) v = hb.h(v) * gv;
    HVec l2 = burgers_analyze(hb.core, vals);
    for (std::size_t k = 1; k <= hb.M; ++k) l2[k - 1] *= static_cast<double>(k);
    return l2;  // now H^1_0 coefficients
}

HVec h01_drift(const H01Burgers& hb, const HVec& u) {
    HVec f0 = h01_f0(hb, u);
    HVec b = h01_b(hb, u);
    // (-A)^{-1/2} divides the etilde_k coefficient by k
    for (std::size_t k = 1; k <= hb.M; ++k) f0[k - 1] += b[k - 1] / static_cast<double>(k);
    return f0;
}

double hs_norm(double s, const HVec& u) {
    double acc = 0.0;
    for (std::size_t k = 1; k <= u.size(); ++k)
        acc += std::pow(static_cast<double>(k), 4.0 * s) * u[k - 1] * u[k - 1];
    return std::sqrt(acc);
}

// --- drift adaptors ------------------------------------------------------

namespace {

class BurgersDrift final : public Drift {
public:
    explicit BurgersDrift(Burgers1D b) : b_(std::move(b)) {}
    HVec eval(const HVec& x) const override { return burgers_drift(b_, x); }
    std::string kind() const override { return "nemytskii_burgers(" + b_.h.name + ")"; }
    std::optional<double> sup_norm() const override {
        if (b_.h.sup) return *b_.h.sup * std::sqrt(kPi);
        return std::nullopt;
    }
    double growth_const() const override { return b_.h.growth_const * std::sqrt(kPi); }
    double local_bound(double r) const override {
        if (auto s = sup_norm()) return *s;
        // classical h(s) = s^2/2: |F(x)| <= |h(x(.))|_{L^2} <= max|x|^2/2 * sqrt(pi)
        double xmax = std::sqrt(2.0 / kPi) * std::sqrt(b_.M) * r;
        return 0.5 * xmax * xmax * std::sqrt(kPi);
    }

private:
    Burgers1D b_;
};

class CahnHilliardDrift final : public Drift {
public:
    explicit CahnHilliardDrift(CahnHilliard3D c) : c_(std::move(c)) {}
    HVec eval(const HVec& x) const override { return cahn_hilliard_drift(c_, x); }
    std::string kind() const override { return "cahn_hilliard(" + c_.h.name + ")"; }
    std::optional<double> sup_norm() const override {
        if (c_.h.sup) return 2.0 * *c_.h.sup * std::pow(kPi, 1.5);
        return std::nullopt;
    }
    double growth_const() const override { return c_.h.growth_const * std::pow(kPi, 1.5); }
    double local_bound(double r) const override {
        if (auto s = sup_norm()) return *s;
        double xmax = std::pow(2.0 / kPi, 1.5) * std::sqrt(static_cast<double>(c_.indices.size())) * r;
        double h = std::abs(c_.h(xmax)) + std::abs(c_.h(-xmax));
        return 2.0 * h * std::pow(kPi, 1.5);
    }

private:
    CahnHilliard3D c_;
};

class H01Drift final : public Drift {
public:
    explicit H01Drift(H01Burgers hb) : hb_(std::move(hb)) {}
    HVec eval(const HVec& u) const override { return h01_drift(hb_, u); }
    std::string kind() const override {
        return "h01_burgers(" + hb_.h.name + "," + hb_.g.name + ")";
    }
    double growth_const() const override { return 1.0; }  // B part only; F0 is quadratic
    double local_bound(double r) const override {
        // |x|_inf <= sqrt(2/pi) sum |u_k|/k <= sqrt(pi/3) |u|; crude F0 bound
        double xmax = std::sqrt(kPi / 3.0) * r;
        double f0 = std::pow(static_cast<double>(hb_.M), 1.5) * 0.5 * xmax * xmax *
                    std::sqrt(2.0 * kPi);
        return f0 + 1.0 + r;
    }

private:
    H01Burgers hb_;
};

}  // namespace

DriftPtr make_burgers_drift(Burgers1D b) { return std::make_shared<BurgersDrift>(std::move(b)); }
DriftPtr make_cahn_hilliard_drift(CahnHilliard3D c) {
    return std::make_shared<CahnHilliardDrift>(std::move(c));
}
DriftPtr make_h01_drift(H01Burgers hb) { return std::make_shared<H01Drift>(std::move(hb)); }

}  // namespace sglab
