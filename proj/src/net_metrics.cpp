#include "vam/net_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "vam/parallel.hpp"

namespace vam {

InfluenceVector influence_vector(const TemporalGraph& g, const UserLedger& ledger,
                                 Platform platform) {
    InfluenceVector out;
    for (const auto& e : g.edges) {
        if (e.child == e.parent) continue;
        if (!ledger.is_old_at(platform, e.parent, g.bin_start)) continue;
        out[e.parent] += static_cast<double>(e.weight);
    }
    return out;
}

double weighted_jaccard(const InfluenceVector& p, const InfluenceVector& a) {
    double min_sum = 0.0, max_sum = 0.0;
    auto ip = p.begin();
    auto ia = a.begin();
    auto take = [&](double pv, double av) {
        if (pv < 0 || av < 0) throw std::invalid_argument("weighted_jaccard: negative weight");
        min_sum += std::min(pv, av);
        max_sum += std::max(pv, av);
    };
    while (ip != p.end() || ia != a.end()) {
        if (ia == a.end() || (ip != p.end() && ip->first < ia->first)) {
            take(ip->second, 0.0);
            ++ip;
        } else if (ip == p.end() || ia->first < ip->first) {
            take(0.0, ia->second);
            ++ia;
        } else {
            take(ip->second, ia->second);
            ++ip;
            ++ia;
        }
    }
    if (max_sum == 0.0) return 1.0;  // both vectors empty or all-zero
    return min_sum / max_sum;
}

PageRankResult pagerank(const TemporalGraph& g, double damping, double tol, int max_iter) {
    PageRankResult result;
    result.nodes = g.node_set();
    const std::size_t n = result.nodes.size();
    if (n == 0) throw std::invalid_argument("pagerank: empty graph");

    std::unordered_map<std::string, std::size_t> index;
    index.reserve(n);
    for (std::size_t i = 0; i < n; ++i) index[result.nodes[i]] = i;

    // CSR over incoming edges; each node accumulates its own in-list in a
    // fixed order, which keeps the iteration bitwise identical at any thread
    // count.
    std::vector<double> out_weight(n, 0.0);
    std::vector<std::vector<std::pair<std::uint32_t, double>>> in_edges(n);
    for (const auto& e : g.edges) {
        const std::size_t c = index[e.child];
        const std::size_t p = index[e.parent];
        out_weight[c] += static_cast<double>(e.weight);
        in_edges[p].emplace_back(static_cast<std::uint32_t>(c), static_cast<double>(e.weight));
    }

    std::vector<double> score(n, 1.0 / static_cast<double>(n));
    std::vector<double> next(n, 0.0);
    const double dn = static_cast<double>(n);

    int iter = 0;
    bool converged = false;
    for (; iter < max_iter; ++iter) {
        double dangling = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (out_weight[i] == 0.0) dangling += score[i];
        const double base = (1.0 - damping) / dn + damping * dangling / dn;
        parallel_for(static_cast<std::int64_t>(n), [&](std::int64_t v) {
            double s = 0.0;
            for (const auto& [u, w] : in_edges[static_cast<std::size_t>(v)])
                s += score[u] / out_weight[u] * w;
            next[static_cast<std::size_t>(v)] = base + damping * s;
        });
        double delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) delta += std::fabs(next[i] - score[i]);
        score.swap(next);
        if (delta < tol) {
            converged = true;
            ++iter;
            break;
        }
    }
    result.scores = std::move(score);
    result.converged = converged;
    result.iterations = iter;
    return result;
}

double emd_1d(std::span<const double> p, std::span<const double> a) {
    if (p.empty() || a.empty()) throw std::invalid_argument("emd_1d: empty input");
    std::vector<double> ps(p.begin(), p.end());
    std::vector<double> as(a.begin(), a.end());
    std::sort(ps.begin(), ps.end());
    std::sort(as.begin(), as.end());

    // Integrate |quantile difference| over the step quantile functions; the
    // sweep runs on the common 1/(n*m) grid so segment boundaries are exact.
    const std::int64_t n = static_cast<std::int64_t>(ps.size());
    const std::int64_t m = static_cast<std::int64_t>(as.size());
    std::int64_t pos = 0;
    std::size_t i = 0, j = 0;
    double total = 0.0;
    while (pos < n * m) {
        const std::int64_t pi = static_cast<std::int64_t>(i + 1) * m;
        const std::int64_t aj = static_cast<std::int64_t>(j + 1) * n;
        const std::int64_t next = std::min(pi, aj);
        total += static_cast<double>(next - pos) * std::fabs(ps[i] - as[j]);
        pos = next;
        if (pos == pi) ++i;
        if (pos == aj) ++j;
    }
    return total / (static_cast<double>(n) * static_cast<double>(m));
}

Ccdh ccdh(const TemporalGraph& g) {
    std::unordered_map<std::string, std::int64_t> indegree;
    for (const auto& e : g.edges) {
        if (e.child == e.parent) continue;
        ++indegree[e.parent];
    }
    std::int64_t max_deg = 0;
    for (const auto& [_, d] : indegree) max_deg = std::max(max_deg, d);
    Ccdh h;
    h.counts.assign(static_cast<std::size_t>(max_deg), 0);
    for (const auto& [_, d] : indegree)
        for (std::int64_t k = 1; k <= d; ++k) ++h.counts[static_cast<std::size_t>(k - 1)];
    return h;
}

namespace {

// One direction of the band test: every (d, H(d)) point must have a step of
// H' within eps in both relative degree and relative count.
bool rh_direction_feasible(const Ccdh& h, const Ccdh& other, double eps) {
    const std::int64_t d_other = other.max_degree();
    for (std::int64_t d = 1; d <= h.max_degree(); ++d) {
        const double target = static_cast<double>(h.at(d));
        const double lo_band = target - eps * target;
        const double hi_band = target + eps * target;
        const double lo_deg = std::max(1.0, (1.0 - eps) * static_cast<double>(d));
        const double hi_deg = (1.0 + eps) * static_cast<double>(d);
        bool ok = false;
        // Attainable step values over [lo_deg, hi_deg]; degrees past the
        // other histogram's support contribute the value 0.
        const std::int64_t k_lo = static_cast<std::int64_t>(std::floor(lo_deg));
        const std::int64_t k_hi = static_cast<std::int64_t>(std::floor(hi_deg));
        for (std::int64_t k = k_lo; k <= std::min(k_hi, d_other); ++k) {
            const double v = static_cast<double>(other.at(k));
            if (v >= lo_band && v <= hi_band) {
                ok = true;
                break;
            }
        }
        if (!ok && k_hi > d_other && 0.0 >= lo_band) ok = true;
        if (!ok) return false;
    }
    return true;
}

}  // namespace

double relative_hausdorff(const Ccdh& h1, const Ccdh& h2) {
    if (h1.empty() || h2.empty())
        throw std::invalid_argument("relative_hausdorff: empty histogram");
    auto feasible = [&](double eps) {
        return rh_direction_feasible(h1, h2, eps) && rh_direction_feasible(h2, h1, eps);
    };
    if (feasible(0.0)) return 0.0;
    double hi = 1.0;
    while (!feasible(hi)) {
        hi *= 2.0;
        if (hi > 1e12) throw std::runtime_error("relative_hausdorff: no feasible band found");
    }
    double lo = 0.0;
    while (hi - lo > 1e-4) {
        const double mid = (lo + hi) / 2.0;
        if (feasible(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

}  // namespace vam
