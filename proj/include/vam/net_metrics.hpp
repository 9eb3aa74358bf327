#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "vam/events.hpp"

namespace vam {

// user -> received interaction weight within one bin (self-loops excluded;
// a root post is not received influence).
using InfluenceVector = std::map<std::string, double>;

// Received weights of users already known to the ledger before the graph's
// bin (old users). Simulated new-user ids are absent from the ledger and
// therefore never appear.
InfluenceVector influence_vector(const TemporalGraph& g, const UserLedger& ledger,
                                 Platform platform);

// Ruzicka similarity: sum(min)/sum(max) over the key union. Both empty -> 1.
double weighted_jaccard(const InfluenceVector& p, const InfluenceVector& a);

struct PageRankResult {
    std::vector<std::string> nodes;  // sorted ascending
    std::vector<double> scores;      // aligned with nodes; sums to 1
    bool converged = false;
    int iterations = 0;
};

// Power iteration where score flows child -> parent, so heavily retweeted
// users rank high. Dangling mass is redistributed uniformly.
PageRankResult pagerank(const TemporalGraph& g, double damping = 0.85, double tol = 1e-9,
                        int max_iter = 200);

// Exact 1-Wasserstein distance between the empirical distributions of two
// score multisets (no node identity matching).
double emd_1d(std::span<const double> p, std::span<const double> a);

// Complementary cumulative degree histogram of the unweighted indegree:
// counts[d-1] = number of nodes with indegree >= d. Self-loops excluded.
// Trailing zeros are trimmed, so every stored count is positive.
struct Ccdh {
    std::vector<std::int64_t> counts;

    bool empty() const { return counts.empty(); }
    int max_degree() const { return static_cast<int>(counts.size()); }
    // Right-continuous step-function view over the positive degree axis.
    std::int64_t at(std::int64_t d) const {
        if (d < 1) throw std::out_of_range("ccdh: degree must be >= 1");
        return d <= max_degree() ? counts[static_cast<std::size_t>(d - 1)] : 0;
    }
};

Ccdh ccdh(const TemporalGraph& g);

// Smallest eps such that each histogram lies inside the other's eps-relative
// band in both the degree and count axes. Binary search to 1e-4.
double relative_hausdorff(const Ccdh& h1, const Ccdh& h2);

}  // namespace vam
