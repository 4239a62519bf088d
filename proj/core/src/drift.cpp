#include "sglab/drift.hpp"

#include <cmath>
#include <stdexcept>

#include "sglab/gaussian.hpp"
#include "sglab/rng.hpp"

namespace sglab {

namespace {

class ZeroDrift final : public Drift {
public:
    explicit ZeroDrift(std::size_t M) : M_(M), active_{} {}
    HVec eval(const HVec&) const override { return HVec(M_, 0.0); }
    std::string kind() const override { return "zero"; }
    std::optional<double> sup_norm() const override { return 0.0; }
    double growth_const() const override { return 0.0; }
    const std::vector<int>* active() const override { return &active_; }
    std::optional<double> sup_dist(const HVec& z) const override { return norm(z); }

private:
    std::size_t M_;
    std::vector<int> active_;
};

class ConstantDrift final : public Drift {
public:
    explicit ConstantDrift(HVec z) : z_(std::move(z)) {
        for (std::size_t k = 0; k < z_.size(); ++k)
            if (z_[k] != 0.0) active_.push_back(static_cast<int>(k + 1));
    }
    HVec eval(const HVec&) const override { return z_; }
    std::string kind() const override { return "constant"; }
    std::optional<double> sup_norm() const override { return norm(z_); }
    double growth_const() const override { return norm(z_); }
    const std::vector<int>* active() const override { return &active_; }
    std::optional<double> sup_dist(const HVec& z) const override { return norm(z_ - z); }

private:
    HVec z_;
    std::vector<int> active_;
};

class NearConstantDrift final : public Drift {
public:
    NearConstantDrift(HVec z, std::vector<int> active, std::vector<double> amps)
        : z_(std::move(z)), coords_(std::move(active)), amps_(std::move(amps)) {
        if (coords_.size() != amps_.size())
            throw std::invalid_argument("near_constant drift: one amplitude per coordinate");
        double s = 0.0;
        for (double a : amps_) s += a * a;
        delta_ = std::sqrt(s);
        active_ = coords_;
        for (std::size_t k = 0; k < z_.size(); ++k) {
            if (z_[k] == 0.0) continue;
            int kk = static_cast<int>(k + 1);
            bool found = false;
            for (int c : active_) found = found || c == kk;
            if (!found) active_.push_back(kk);
        }
    }
    HVec eval(const HVec& x) const override {
        HVec y = z_;
        y.resize(std::max(y.size(), x.size()), 0.0);
        for (std::size_t j = 0; j < coords_.size(); ++j) {
            std::size_t k = static_cast<std::size_t>(coords_[j]);
            double xv = k <= x.size() ? x[k - 1] : 0.0;
            y[k - 1] += amps_[j] * std::tanh(xv);
        }
        return y;
    }
    std::string kind() const override { return "near_constant"; }
    std::optional<double> sup_norm() const override { return norm(z_) + delta_; }
    double growth_const() const override { return norm(z_) + delta_; }
    const std::vector<int>* active() const override { return &active_; }
    std::optional<double> sup_dist(const HVec& z) const override {
        HVec d = z_;
        d.resize(std::max(d.size(), z.size()), 0.0);
        for (std::size_t k = 0; k < z.size() && k < d.size(); ++k) d[k] -= z[k];
        // componentwise worst case: the tanh part has range [-|amp|, |amp|]
        double s = 0.0;
        for (std::size_t k = 0; k < d.size(); ++k) {
            double a = 0.0;
            for (std::size_t j = 0; j < coords_.size(); ++j)
                if (static_cast<std::size_t>(coords_[j]) == k + 1) a = std::abs(amps_[j]);
            double w = std::abs(d[k]) + a;
            s += w * w;
        }
        return std::sqrt(s);
    }

private:
    HVec z_;
    std::vector<int> coords_;
    std::vector<double> amps_;
    std::vector<int> active_;
    double delta_ = 0.0;
};

double cutoff_eta(double r) {
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    double u = 2.0 - r;
    return u * u * (3.0 - 2.0 * u);
}

class TruncatedDrift final : public Drift {
public:
    TruncatedDrift(DriftPtr inner, double n) : inner_(std::move(inner)), n_(n) {
        if (!(n_ > 0.0)) throw std::invalid_argument("truncated drift: n must be positive");
    }
    HVec eval(const HVec& x) const override {
        double eta = cutoff_eta(norm(x) / n_);
        if (eta == 0.0) return HVec(x.size(), 0.0);
        return eta * inner_->eval(x);
    }
    std::string kind() const override { return "truncated(" + inner_->kind() + ")"; }
    std::optional<double> sup_norm() const override {
        if (auto s = inner_->sup_norm()) return s;
        return inner_->local_bound(2.0 * n_);
    }
    double growth_const() const override { return inner_->growth_const(); }
    const std::vector<int>* active() const override { return nullptr; }
    double level() const { return n_; }

private:
    DriftPtr inner_;
    double n_;
};

class MollifiedDrift final : public Drift {
public:
    MollifiedDrift(const SpectralModel& model, DriftPtr F, int n, int quad_order, int mc_samples)
        : model_(model), inner_(std::move(F)), n_(n), quad_order_(quad_order),
          mc_samples_(mc_samples) {
        if (n < 1) throw std::invalid_argument("mollify_drift: n must be >= 1");
        if (!inner_->sup_norm())
            throw std::invalid_argument("mollify_drift: drift must be bounded (truncate first)");
        q_ = model_.covariance_qt(1.0 / n);
    }

    HVec eval(const HVec& x) const override {
        HVec ex = model_.semigroup_apply(1.0 / n_, x);
        const auto* act = inner_->active();
        if (act && act->size() >= 1 && act->size() <= 3) return eval_quadrature(ex, *act);
        return eval_mc(ex);
    }
    std::string kind() const override { return "mollified(" + inner_->kind() + ")"; }
    std::optional<double> sup_norm() const override { return inner_->sup_norm(); }
    double growth_const() const override { return inner_->growth_const(); }
    const std::vector<int>* active() const override { return inner_->active(); }
    std::optional<double> sup_dist(const HVec& z) const override {
        // smoothing against a probability measure cannot increase sup |F - z|
        return inner_->sup_dist(z);
    }

private:
    HVec eval_quadrature(const HVec& ex, const std::vector<int>& act) const {
        const int n = static_cast<int>(act.size());
        std::vector<double> cov(n);
        for (int j = 0; j < n; ++j) cov[j] = q_[static_cast<std::size_t>(act[j]) - 1];
        HVec out(model_.M(), 0.0);
        // component-wise tensor quadrature over the active coordinates
        for (std::size_t comp = 0; comp < model_.M(); ++comp) {
            bool is_active_out = false;
            for (int j = 0; j < n; ++j)
                if (static_cast<std::size_t>(act[j]) == comp + 1) is_active_out = true;
            bool maybe_nonzero = is_active_out;
            if (const auto* a2 = inner_->active(); a2 && !is_active_out) {
                maybe_nonzero = false;  // cylindrical drift is supported on its active set
            }
            if (!maybe_nonzero) continue;
            out[comp] = gh_integrate(
                n, cov,
                [&](std::span<const double> y) {
                    HVec arg = ex;
                    for (int j = 0; j < n; ++j) arg[static_cast<std::size_t>(act[j]) - 1] += y[j];
                    return inner_->eval(arg)[comp];
                },
                quad_order_);
        }
        return out;
    }

    HVec eval_mc(const HVec& ex) const {
        HVec acc(model_.M(), 0.0);
        // fixed internal seed: common random numbers keep F_n smooth in x
        auto draws = sample_gaussian(q_, {0x6D6F6C6C69667931ULL, 0}, mc_samples_);
        for (const auto& y : draws) {
            HVec v = inner_->eval(ex + y);
            for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += v[k];
        }
        for (double& a : acc) a /= mc_samples_;
        return acc;
    }

    SpectralModel model_;
    DriftPtr inner_;
    int n_;
    int quad_order_;
    int mc_samples_;
    std::vector<double> q_;
};

class ProjectedDrift final : public Drift {
public:
    ProjectedDrift(DriftPtr inner, std::size_t m) : inner_(std::move(inner)), m_(m) {
        if (const auto* a = inner_->active()) {
            for (int k : *a)
                if (static_cast<std::size_t>(k) <= m_) active_.push_back(k);
        }
    }
    HVec eval(const HVec& x) const override {
        HVec v = inner_->eval(project(x, m_));
        return project(v, m_);
    }
    std::string kind() const override { return "projected(" + inner_->kind() + ")"; }
    std::optional<double> sup_norm() const override { return inner_->sup_norm(); }
    double growth_const() const override { return inner_->growth_const(); }
    const std::vector<int>* active() const override {
        return inner_->active() ? &active_ : nullptr;
    }
    std::optional<double> sup_dist(const HVec& z) const override {
        if (norm(z) == 0.0) return inner_->sup_dist(z);
        return std::nullopt;
    }

private:
    DriftPtr inner_;
    std::size_t m_;
    std::vector<int> active_;
};

}  // namespace

DriftPtr make_zero_drift(std::size_t M) { return std::make_shared<ZeroDrift>(M); }
DriftPtr make_constant_drift(HVec z) { return std::make_shared<ConstantDrift>(std::move(z)); }
DriftPtr make_near_constant_drift(HVec z, std::vector<int> active, std::vector<double> amps) {
    return std::make_shared<NearConstantDrift>(std::move(z), std::move(active), std::move(amps));
}
DriftPtr make_truncated_drift(DriftPtr inner, double n) {
    return std::make_shared<TruncatedDrift>(std::move(inner), n);
}
DriftPtr mollify_drift(const SpectralModel& model, DriftPtr F, int n, int quad_order,
                       int mc_samples) {
    return std::make_shared<MollifiedDrift>(model, std::move(F), n, quad_order, mc_samples);
}
DriftPtr make_projected_drift(DriftPtr inner, std::size_t m) {
    return std::make_shared<ProjectedDrift>(std::move(inner), m);
}

}  // namespace sglab
