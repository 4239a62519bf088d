#include "sglab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sglab {

namespace {

double ks_c(double level) { return std::sqrt(-0.5 * std::log(level / 2.0)); }

// sum_{i,j} |a_i - b_j| for sorted b via prefix sums
double cross_abs_sum(const std::vector<double>& a, const std::vector<double>& b_sorted,
                     const std::vector<double>& b_prefix) {
    const std::size_t m = b_sorted.size();
    double total = 0.0;
    for (double x : a) {
        auto it = std::upper_bound(b_sorted.begin(), b_sorted.end(), x);
        std::size_t r = static_cast<std::size_t>(it - b_sorted.begin());  // b_j <= x count
        double below = b_prefix[r];
        double above = b_prefix[m] - below;
        total += x * static_cast<double>(r) - below + above - x * static_cast<double>(m - r);
    }
    return total;
}

double within_abs_sum(const std::vector<double>& sorted) {
    double total = 0.0;
    const double n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        total += (2.0 * static_cast<double>(i) - n + 1.0) * sorted[i];
    return total;
}

double energy_sorted(std::vector<double>& a, std::vector<double>& b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::vector<double> bp(b.size() + 1, 0.0);
    for (std::size_t j = 0; j < b.size(); ++j) bp[j + 1] = bp[j] + b[j];
    double n = static_cast<double>(a.size()), m = static_cast<double>(b.size());
    double ab = cross_abs_sum(a, b, bp);
    double aa = within_abs_sum(a);
    double bb = within_abs_sum(b);
    return 2.0 * ab / (n * m) - 2.0 * aa / (n * n) - 2.0 * bb / (m * m);
}

}  // namespace

KsResult ks_one_sample(std::vector<double> samples, const std::function<double(double)>& cdf,
                       double level) {
    if (samples.empty()) throw std::invalid_argument("ks_one_sample: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double c = cdf(samples[i]);
        d = std::max(d, std::abs(c - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - c));
    }
    KsResult r;
    r.statistic = d;
    r.level = level;
    r.critical = ks_c(level) / std::sqrt(n);
    r.pass = d < r.critical;
    return r;
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b, double level) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double n = static_cast<double>(a.size()), m = static_cast<double>(b.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
    }
    KsResult r;
    r.statistic = d;
    r.level = level;
    r.critical = ks_c(level) * std::sqrt((n + m) / (n * m));
    r.pass = d < r.critical;
    return r;
}

double energy_distance(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("energy_distance: empty sample");
    return energy_sorted(a, b);
}

PermutationResult energy_permutation_test(const std::vector<double>& a,
                                          const std::vector<double>& b, int n_perm,
                                          SeedSpec seed) {
    std::vector<double> aa = a, bb = b;
    PermutationResult res;
    res.statistic = energy_sorted(aa, bb);
    res.permutations = n_perm;
    std::vector<double> pool = a;
    pool.insert(pool.end(), b.begin(), b.end());
    Rng rng(seed);
    int geq = 0;
    for (int p = 0; p < n_perm; ++p) {
        // Fisher-Yates on the pooled sample
        for (std::size_t i = pool.size() - 1; i > 0; --i) {
            std::size_t j = static_cast<std::size_t>(rng.uniform() * (i + 1));
            if (j > i) j = i;
            std::swap(pool[i], pool[j]);
        }
        std::vector<double> pa(pool.begin(), pool.begin() + a.size());
        std::vector<double> pb(pool.begin() + a.size(), pool.end());
        if (energy_sorted(pa, pb) >= res.statistic) ++geq;
    }
    res.p_value = (1.0 + geq) / (n_perm + 1.0);
    return res;
}

}  // namespace sglab
