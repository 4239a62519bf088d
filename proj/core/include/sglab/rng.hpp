#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace sglab {

// Identifies one reproducible random stream.  (master_seed, stream_id)
// fully determines every draw; distinct stream_ids give independent
// streams regardless of how work is partitioned across workers.
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_id = 0;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace detail

// Inverse of the standard normal CDF (Acklam's rational approximation,
// polished with one Halley step against erfc).  Used for Gaussian draws:
// inverse-CDF sampling is the fixed, documented choice so that ensembles
// are bitwise reproducible from the seed alone.
inline double normal_icdf(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("normal_icdf: p must be in (0,1)");
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1.0 - plow;
    double x;
    if (p < plow) {
        double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= phigh) {
        double q = p - 0.5, r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    // Halley refinement to full double precision.
    double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    double u = e * std::sqrt(2.0 * 3.14159265358979323846) * std::exp(x * x / 2.0);
    return x - u / (1.0 + x * u / 2.0);
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Counter-style stream RNG: a splitmix64 walk whose initial state is a
// hash of (master_seed, stream_id).  Each call advances the counter by a
// fixed odd constant, so the k-th draw of a stream is a pure function of
// (master_seed, stream_id, k).
class Rng {
public:
    explicit Rng(SeedSpec seed) {
        std::uint64_t s = seed.master_seed;
        state_ = detail::splitmix64(s);
        std::uint64_t t = seed.stream_id ^ 0xD1B54A32D192ED03ULL;
        state_ ^= detail::splitmix64(t);
        // burn-in decorrelates nearby (seed, stream) pairs
        detail::splitmix64(state_);
        detail::splitmix64(state_);
    }

    std::uint64_t next_u64() { return detail::splitmix64(state_); }

    // Uniform on (0, 1), never returning the endpoints.
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
    }

    // Standard normal via inverse CDF (one uniform per draw).
    double normal() { return normal_icdf(uniform()); }

private:
    std::uint64_t state_;
};

}  // namespace sglab
