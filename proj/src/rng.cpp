#include "vam/rng.hpp"

#include <limits>

namespace vam {

std::vector<std::size_t> weighted_sample_without_replacement(const std::vector<double>& weights,
                                                             std::size_t k, Rng& rng) {
    // key_i = Exp(1)/w_i; the k smallest keys form a weighted sample without
    // replacement equivalent to sequential draw-and-remove.
    std::vector<std::pair<double, std::size_t>> keyed;
    keyed.reserve(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const double w = weights[i];
        if (w < 0) throw std::invalid_argument("negative weight");
        const double u = rng.next_double();
        if (w == 0.0) continue;
        double e = -std::log1p(-u);  // Exp(1), finite since u < 1
        keyed.emplace_back(e / w, i);
    }
    if (k > keyed.size()) k = keyed.size();
    std::partial_sort(keyed.begin(), keyed.begin() + static_cast<std::ptrdiff_t>(k), keyed.end());
    std::vector<std::size_t> out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = keyed[i].second;
    return out;
}

}  // namespace vam
