#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace vam {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Order-sensitive seed derivation: hash_mix(seed, a, b, ...).
inline std::uint64_t hash_mix(std::uint64_t h) { return splitmix64(h); }
template <class... Rest>
std::uint64_t hash_mix(std::uint64_t h, std::uint64_t next, Rest... rest) {
    return hash_mix(splitmix64(h ^ splitmix64(next)), rest...);
}

// xoshiro256** with deterministic cross-platform output. All sampling in the
// project goes through this generator so runs are reproducible bit-for-bit.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) {
        std::uint64_t x = seed;
        for (auto& w : state_) w = x = splitmix64(x + 0x243f6a8885a308d3ULL);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n). Rejection-sampled, unbiased.
    std::uint64_t next_below(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("next_below(0)");
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    double next_gaussian() {
        // Box-Muller, one value per call (the pair's second half is dropped to
        // keep the consumption pattern simple and deterministic).
        double u1 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    // Poisson via inversion for small means, PTRS-free fallback to normal
    // approximation for large means (desk-scale rates keep us in inversion).
    std::int64_t next_poisson(double mean) {
        if (mean < 0) throw std::invalid_argument("poisson mean < 0");
        if (mean == 0) return 0;
        if (mean < 60.0) {
            const double l = std::exp(-mean);
            std::int64_t k = 0;
            double p = 1.0;
            do {
                ++k;
                p *= next_double();
            } while (p > l);
            return k - 1;
        }
        const double g = next_gaussian();
        const double v = mean + std::sqrt(mean) * g;
        return v < 0 ? 0 : static_cast<std::int64_t>(std::llround(v));
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t state_[4];
};

// Index into `cumulative` (non-decreasing, last element > 0) with probability
// proportional to the increments. One uniform draw per call.
inline std::size_t draw_from_cumulative(const std::vector<double>& cumulative, Rng& rng) {
    if (cumulative.empty() || cumulative.back() <= 0.0)
        throw std::invalid_argument("empty or zero-mass cumulative weights");
    const double u = rng.next_double() * cumulative.back();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()),
                                 cumulative.size() - 1);
}

inline std::size_t draw_weighted(const std::vector<double>& weights, Rng& rng) {
    std::vector<double> cum(weights.size());
    double s = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] < 0) throw std::invalid_argument("negative weight");
        s += weights[i];
        cum[i] = s;
    }
    return draw_from_cumulative(cum, rng);
}

// Weighted sampling without replacement (Efraimidis-Spirakis): draw one
// exponential key per item, keep the k smallest keys. Zero-weight items are
// never selected. Returns indices in selection order (ascending key).
std::vector<std::size_t> weighted_sample_without_replacement(const std::vector<double>& weights,
                                                             std::size_t k, Rng& rng);

}  // namespace vam
