#pragma once

#include <functional>
#include <vector>

#include "sglab/rng.hpp"

namespace sglab {

struct KsResult {
    double statistic = 0.0;
    double critical = 0.0;
    double level = 0.0;
    bool pass = false;
};

// Asymptotic critical values c(alpha) sqrt(1/n) resp. c(alpha) sqrt((n+m)/nm)
// with c(alpha) = sqrt(-ln(alpha/2)/2).
KsResult ks_one_sample(std::vector<double> samples, const std::function<double(double)>& cdf,
                       double level);
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b, double level);

// Szekely-Rizzo energy distance between scalar samples, O(n log n).
double energy_distance(std::vector<double> a, std::vector<double> b);

struct PermutationResult {
    double statistic = 0.0;
    double p_value = 1.0;
    int permutations = 0;
};

PermutationResult energy_permutation_test(const std::vector<double>& a,
                                          const std::vector<double>& b, int n_perm = 200,
                                          SeedSpec seed = {0x656e65726779ULL, 0});

}  // namespace sglab
