#include "vam/gbt.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "vam/rng.hpp"

namespace vam {

void GbtParams::validate() const {
    if (n_trees < 1) throw std::invalid_argument("gbt: n_trees must be >= 1");
    if (!(learning_rate > 0.0 && learning_rate <= 1.0))
        throw std::invalid_argument("gbt: learning_rate must be in (0, 1]");
    if (!(colsample > 0.0 && colsample <= 1.0))
        throw std::invalid_argument("gbt: colsample must be in (0, 1]");
    if (max_depth < 0) throw std::invalid_argument("gbt: max_depth must be >= 0");
    if (l2_lambda < 0.0) throw std::invalid_argument("gbt: l2_lambda must be >= 0");
    if (min_samples_leaf < 1) throw std::invalid_argument("gbt: min_samples_leaf must be >= 1");
    if (subsample != 1.0) throw std::invalid_argument("gbt: subsample is pinned to 1");
    if (l1_alpha != 0.0) throw std::invalid_argument("gbt: l1_alpha is pinned to 0");
    if (gamma_min_split_gain != 0.0)
        throw std::invalid_argument("gbt: min split gain is pinned to 0");
}

double RegressionTree::predict(std::span<const double> x) const {
    int i = 0;
    while (nodes[static_cast<std::size_t>(i)].feature >= 0) {
        const TreeNode& n = nodes[static_cast<std::size_t>(i)];
        i = x[static_cast<std::size_t>(n.feature)] < n.threshold ? n.left : n.right;
    }
    return nodes[static_cast<std::size_t>(i)].value;
}

int RegressionTree::depth() const {
    std::vector<int> d(nodes.size(), 0);
    int maxd = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const TreeNode& n = nodes[i];
        if (n.feature >= 0) {
            d[static_cast<std::size_t>(n.left)] = d[i] + 1;
            d[static_cast<std::size_t>(n.right)] = d[i] + 1;
            maxd = std::max(maxd, d[i] + 1);
        }
    }
    return maxd;
}

double TreeEnsemble::predict(std::span<const double> x) const {
    if (x.size() != feature_width)
        throw std::invalid_argument("predict: feature width mismatch (got " +
                                    std::to_string(x.size()) + ", trained on " +
                                    std::to_string(feature_width) + ")");
    double acc = 0.0;
    for (const auto& t : trees) acc += t.predict(x);
    return base_score + params.learning_rate * acc;
}

std::map<int, std::int64_t> TreeEnsemble::split_counts() const {
    std::map<int, std::int64_t> counts;
    for (const auto& t : trees)
        for (const auto& n : t.nodes)
            if (n.feature >= 0) ++counts[n.feature];
    return counts;
}

namespace {

struct NodeStats {
    double sum = 0.0;
    std::int64_t count = 0;
};

struct SplitChoice {
    double gain = 0.0;
    int feature = -1;
    double threshold = 0.0;
    bool found() const { return feature >= 0; }
};

double split_gain(double left_sum, double ln, double right_sum, double rn, double total_sum,
                  double n, double lambda) {
    return 0.5 * (left_sum * left_sum / (ln + lambda) + right_sum * right_sum / (rn + lambda) -
                  total_sum * total_sum / (n + lambda));
}

}  // namespace

GbtPresort GbtPresort::build(const MatrixView& x) {
    GbtPresort p;
    p.order.assign(x.width, std::vector<std::uint32_t>(x.rows));
    std::vector<std::uint32_t> base(x.rows);
    std::iota(base.begin(), base.end(), 0u);
    for (std::size_t f = 0; f < x.width; ++f) {
        p.order[f] = base;
        std::stable_sort(p.order[f].begin(), p.order[f].end(),
                         [&](std::uint32_t a, std::uint32_t b) { return x.at(a, f) < x.at(b, f); });
    }
    return p;
}

TreeEnsemble fit_gbt(const MatrixView& x, std::span<const double> y, const GbtParams& params,
                     std::uint64_t seed, const GbtPresort* presort) {
    params.validate();
    const std::size_t n = x.rows;
    const std::size_t width = x.width;
    if (n != y.size()) throw std::invalid_argument("gbt: |X| != |y|");
    if (n < 2) throw std::invalid_argument("gbt: need at least 2 samples");
    for (std::size_t i = 0; i < n * width; ++i)
        if (!std::isfinite(x.data[i])) throw std::invalid_argument("gbt: non-finite feature");
    for (double v : y)
        if (!std::isfinite(v)) throw std::invalid_argument("gbt: non-finite target");

    TreeEnsemble ens;
    ens.feature_width = width;
    ens.params = params;
    ens.base_score = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);

    std::vector<double> pred(n, ens.base_score);
    std::vector<double> resid(n);

    auto train_mse = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = y[i] - pred[i];
            s += d * d;
        }
        return s / static_cast<double>(n);
    };
    ens.stage_train_mse.push_back(train_mse());

    // One global pre-sort per feature; per-level scans filter rows through the
    // row->node map, which yields each node's rows already in sorted order.
    GbtPresort local;
    if (!presort) {
        local = GbtPresort::build(x);
        presort = &local;
    }
    if (presort->order.size() != width || (width > 0 && presort->order[0].size() != n))
        throw std::invalid_argument("gbt: presort shape mismatch");
    const auto& order = presort->order;

    Rng rng(seed);
    const std::size_t n_cols = std::min<std::size_t>(
        width, static_cast<std::size_t>(
                   std::ceil(params.colsample * static_cast<double>(width))));
    std::vector<std::size_t> all_cols(width);
    std::iota(all_cols.begin(), all_cols.end(), 0u);

    const double lambda = params.l2_lambda;
    std::vector<int> assign(n);           // row -> node id within current tree
    std::vector<int> slot_of_node;        // node id -> frontier slot (-1 when settled)

    for (int m = 0; m < params.n_trees; ++m) {
        for (std::size_t i = 0; i < n; ++i) resid[i] = y[i] - pred[i];

        // Partial Fisher-Yates, then ascending order so the scan direction is
        // independent of the draw order.
        std::vector<std::size_t> cols = all_cols;
        for (std::size_t i = 0; i < n_cols; ++i) {
            const std::size_t j = i + rng.next_below(width - i);
            std::swap(cols[i], cols[j]);
        }
        cols.resize(n_cols);
        std::sort(cols.begin(), cols.end());

        RegressionTree tree;
        tree.nodes.push_back({});
        std::fill(assign.begin(), assign.end(), 0);
        std::vector<NodeStats> stats(1);
        for (std::size_t i = 0; i < n; ++i) {
            stats[0].sum += resid[i];
            ++stats[0].count;
        }

        std::vector<int> frontier{0};
        for (int depth = 0; depth < params.max_depth && !frontier.empty(); ++depth) {
            const std::size_t fcount = frontier.size();
            slot_of_node.assign(tree.nodes.size(), -1);
            for (std::size_t s = 0; s < fcount; ++s)
                slot_of_node[static_cast<std::size_t>(frontier[s])] = static_cast<int>(s);

            std::vector<SplitChoice> best(fcount);
            std::vector<double> left_sum(fcount);
            std::vector<std::int64_t> left_cnt(fcount);
            std::vector<double> prev_val(fcount);

            for (std::size_t f : cols) {
                std::fill(left_sum.begin(), left_sum.end(), 0.0);
                std::fill(left_cnt.begin(), left_cnt.end(), 0);
                for (std::uint32_t row : order[f]) {
                    const int slot = slot_of_node[static_cast<std::size_t>(assign[row])];
                    if (slot < 0) continue;
                    const std::size_t s = static_cast<std::size_t>(slot);
                    const double val = x.at(row, f);
                    const NodeStats& tot = stats[static_cast<std::size_t>(frontier[s])];
                    if (left_cnt[s] > 0 && val > prev_val[s]) {
                        const std::int64_t rn = tot.count - left_cnt[s];
                        if (left_cnt[s] >= params.min_samples_leaf &&
                            rn >= params.min_samples_leaf) {
                            const double gain = split_gain(
                                left_sum[s], static_cast<double>(left_cnt[s]),
                                tot.sum - left_sum[s], static_cast<double>(rn), tot.sum,
                                static_cast<double>(tot.count), lambda);
                            if (gain > best[s].gain &&
                                gain > params.gamma_min_split_gain) {
                                double thresh = prev_val[s] + (val - prev_val[s]) / 2.0;
                                if (!(thresh > prev_val[s])) thresh = val;
                                best[s] = {gain, static_cast<int>(f), thresh};
                            }
                        }
                    }
                    left_sum[s] += resid[row];
                    ++left_cnt[s];
                    prev_val[s] = val;
                }
            }

            // Materialize accepted splits, then re-partition rows in one pass.
            std::vector<int> next_frontier;
            for (std::size_t s = 0; s < fcount; ++s) {
                if (!best[s].found()) continue;
                const int node = frontier[s];
                TreeNode& nd = tree.nodes[static_cast<std::size_t>(node)];
                nd.feature = best[s].feature;
                nd.threshold = best[s].threshold;
                nd.left = static_cast<int>(tree.nodes.size());
                nd.right = nd.left + 1;
                tree.nodes.push_back({});
                tree.nodes.push_back({});
                stats.push_back({});
                stats.push_back({});
                next_frontier.push_back(nd.left);
                next_frontier.push_back(nd.right);
            }
            for (std::size_t i = 0; i < n; ++i) {
                const TreeNode& nd = tree.nodes[static_cast<std::size_t>(assign[i])];
                if (nd.feature < 0) continue;
                const int child =
                    x.at(i, static_cast<std::size_t>(nd.feature)) < nd.threshold ? nd.left
                                                                                 : nd.right;
                assign[i] = child;
                stats[static_cast<std::size_t>(child)].sum += resid[i];
                ++stats[static_cast<std::size_t>(child)].count;
            }
            frontier = std::move(next_frontier);
        }

        for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
            TreeNode& nd = tree.nodes[i];
            if (nd.feature < 0)
                nd.value = stats[i].sum / (static_cast<double>(stats[i].count) + lambda);
        }
        for (std::size_t i = 0; i < n; ++i)
            pred[i] += params.learning_rate *
                       tree.nodes[static_cast<std::size_t>(assign[i])].value;

        ens.trees.push_back(std::move(tree));
        ens.stage_train_mse.push_back(train_mse());
    }
    return ens;
}

nlohmann::json TreeEnsemble::to_json() const {
    nlohmann::json j;
    j["format_version"] = 1;
    j["base_score"] = base_score;
    j["feature_width"] = feature_width;
    j["params"] = {{"n_trees", params.n_trees},
                   {"learning_rate", params.learning_rate},
                   {"max_depth", params.max_depth},
                   {"colsample", params.colsample},
                   {"subsample", params.subsample},
                   {"l2_lambda", params.l2_lambda},
                   {"l1_alpha", params.l1_alpha},
                   {"gamma_min_split_gain", params.gamma_min_split_gain},
                   {"min_samples_leaf", params.min_samples_leaf}};
    nlohmann::json trees_j = nlohmann::json::array();
    for (const auto& t : trees) {
        nlohmann::json tj;
        auto& feat = tj["feature"] = nlohmann::json::array();
        auto& thr = tj["threshold"] = nlohmann::json::array();
        auto& lft = tj["left"] = nlohmann::json::array();
        auto& rgt = tj["right"] = nlohmann::json::array();
        auto& val = tj["value"] = nlohmann::json::array();
        for (const auto& nd : t.nodes) {
            feat.push_back(nd.feature);
            thr.push_back(nd.threshold);
            lft.push_back(nd.left);
            rgt.push_back(nd.right);
            val.push_back(nd.value);
        }
        trees_j.push_back(std::move(tj));
    }
    j["trees"] = std::move(trees_j);
    return j;
}

TreeEnsemble TreeEnsemble::from_json(const nlohmann::json& j) {
    if (j.at("format_version").get<int>() != 1)
        throw std::runtime_error("ensemble: unsupported format_version");
    TreeEnsemble e;
    e.base_score = j.at("base_score").get<double>();
    e.feature_width = j.at("feature_width").get<std::size_t>();
    const auto& p = j.at("params");
    e.params.n_trees = p.at("n_trees").get<int>();
    e.params.learning_rate = p.at("learning_rate").get<double>();
    e.params.max_depth = p.at("max_depth").get<int>();
    e.params.colsample = p.at("colsample").get<double>();
    e.params.subsample = p.at("subsample").get<double>();
    e.params.l2_lambda = p.at("l2_lambda").get<double>();
    e.params.l1_alpha = p.at("l1_alpha").get<double>();
    e.params.gamma_min_split_gain = p.at("gamma_min_split_gain").get<double>();
    e.params.min_samples_leaf = p.at("min_samples_leaf").get<int>();
    for (const auto& tj : j.at("trees")) {
        RegressionTree t;
        const auto& feat = tj.at("feature");
        const auto& thr = tj.at("threshold");
        const auto& lft = tj.at("left");
        const auto& rgt = tj.at("right");
        const auto& val = tj.at("value");
        for (std::size_t i = 0; i < feat.size(); ++i) {
            t.nodes.push_back({feat[i].get<int>(), thr[i].get<double>(), lft[i].get<int>(),
                               rgt[i].get<int>(), val[i].get<double>()});
        }
        e.trees.push_back(std::move(t));
    }
    return e;
}

void TreeEnsemble::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write ensemble: " + path);
    out << to_json().dump() << '\n';
}

TreeEnsemble TreeEnsemble::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open ensemble: " + path);
    nlohmann::json j;
    in >> j;
    return from_json(j);
}

}  // namespace vam
