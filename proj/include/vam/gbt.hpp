#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace vam {

// Row-major dense matrix view; the learner never owns sample storage.
struct MatrixView {
    const double* data = nullptr;
    std::size_t rows = 0;
    std::size_t width = 0;

    std::span<const double> row(std::size_t i) const { return {data + i * width, width}; }
    double at(std::size_t i, std::size_t j) const { return data[i * width + j]; }
};

struct GbtParams {
    int n_trees = 100;
    double learning_rate = 0.1;
    int max_depth = 5;
    double colsample = 1.0;  // fraction of features drawn per tree
    double subsample = 1.0;  // pinned
    double l2_lambda = 1.0;
    double l1_alpha = 0.0;             // pinned
    double gamma_min_split_gain = 0.0;  // pinned
    int min_samples_leaf = 1;

    void validate() const;  // throws std::invalid_argument, including on un-pinned fields
};

// feature < 0 marks a leaf; split predicate is x[feature] < threshold.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;
};

struct RegressionTree {
    std::vector<TreeNode> nodes;

    double predict(std::span<const double> x) const;
    int depth() const;
};

class TreeEnsemble {
public:
    double base_score = 0.0;
    std::size_t feature_width = 0;
    GbtParams params;
    std::vector<RegressionTree> trees;
    // Training MSE after each boosting stage (index 0 = base score only).
    std::vector<double> stage_train_mse;

    double predict(std::span<const double> x) const;

    // Split-frequency tally across all trees: feature -> times used.
    std::map<int, std::int64_t> split_counts() const;

    nlohmann::json to_json() const;
    static TreeEnsemble from_json(const nlohmann::json& j);
    void save(const std::string& path) const;
    static TreeEnsemble load(const std::string& path);
};

// Per-feature row orderings, computed once per matrix and shared across every
// fit on it (grid search runs thousands of fits against one X).
struct GbtPresort {
    std::vector<std::vector<std::uint32_t>> order;
    static GbtPresort build(const MatrixView& x);
};

// Stagewise least-squares boosting with exact-greedy axis-aligned splits.
// Deterministic for fixed (x, y, params, seed): thresholds are midpoints of
// consecutive distinct values, ties broken toward the lowest feature index
// then lowest threshold, per-tree column subsets drawn from a seeded stream.
TreeEnsemble fit_gbt(const MatrixView& x, std::span<const double> y, const GbtParams& params,
                     std::uint64_t seed, const GbtPresort* presort = nullptr);

inline std::map<int, std::int64_t> split_importance(const TreeEnsemble& e) {
    return e.split_counts();
}

}  // namespace vam
