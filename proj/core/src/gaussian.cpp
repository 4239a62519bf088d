#include "sglab/gaussian.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace sglab {

std::vector<HVec> sample_gaussian(const std::vector<double>& cov, SeedSpec seed, int count) {
    for (double c : cov)
        if (c < 0.0) throw std::invalid_argument("sample_gaussian: negative covariance entry");
    if (count < 0) throw std::invalid_argument("sample_gaussian: negative count");
    std::vector<double> sd(cov.size());
    for (std::size_t k = 0; k < cov.size(); ++k) sd[k] = std::sqrt(cov[k]);
    std::vector<HVec> out;
    out.reserve(count);
    for (int j = 0; j < count; ++j) {
        Rng rng({seed.master_seed, seed.stream_id + static_cast<std::uint64_t>(j)});
        HVec x(cov.size());
        for (std::size_t k = 0; k < cov.size(); ++k) x[k] = sd[k] == 0.0 ? 0.0 : sd[k] * rng.normal();
        out.push_back(std::move(x));
    }
    return out;
}

namespace {

const QuadratureRule& cached_hermite(int order) {
    static std::map<int, QuadratureRule> cache;
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, gauss_hermite(order)).first;
    return it->second;
}

}  // namespace

double gh_integrate(int dim, std::span<const double> cov,
                    const std::function<double(std::span<const double>)>& g, int order) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("gh_integrate: dim must be in [1,3]");
    if (static_cast<int>(cov.size()) < dim)
        throw std::invalid_argument("gh_integrate: covariance prefix too short");
    const QuadratureRule& rule = cached_hermite(order);
    double sd[3] = {0, 0, 0};
    for (int d = 0; d < dim; ++d) {
        if (cov[d] < 0.0) throw std::invalid_argument("gh_integrate: negative covariance entry");
        sd[d] = std::sqrt(cov[d]);
    }
    const int n = rule.order;
    double y[3];
    double total = 0.0;
    if (dim == 1) {
        for (int i = 0; i < n; ++i) {
            y[0] = sd[0] * rule.nodes[i];
            total += rule.weights[i] * g(std::span<const double>(y, 1));
        }
    } else if (dim == 2) {
        for (int i = 0; i < n; ++i) {
            y[0] = sd[0] * rule.nodes[i];
            double row = 0.0;
            for (int j = 0; j < n; ++j) {
                y[1] = sd[1] * rule.nodes[j];
                row += rule.weights[j] * g(std::span<const double>(y, 2));
            }
            total += rule.weights[i] * row;
        }
    } else {
        for (int i = 0; i < n; ++i) {
            y[0] = sd[0] * rule.nodes[i];
            double plane = 0.0;
            for (int j = 0; j < n; ++j) {
                y[1] = sd[1] * rule.nodes[j];
                double row = 0.0;
                for (int k = 0; k < n; ++k) {
                    y[2] = sd[2] * rule.nodes[k];
                    row += rule.weights[k] * g(std::span<const double>(y, 3));
                }
                plane += rule.weights[j] * row;
            }
            total += rule.weights[i] * plane;
        }
    }
    return total;
}

}  // namespace sglab
