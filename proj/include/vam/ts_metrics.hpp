#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace vam {

// Series-pair error metrics. F = forecast, A = actual; every function is
// symmetric in its arguments.
double rmse(std::span<const double> f, std::span<const double> a);
double mae(std::span<const double> f, std::span<const double> a);

// RMSE between max-normalized cumulative series; all-zero series normalize to
// all-zeros. Both inputs must be non-negative.
double nc_rmse(std::span<const double> f, std::span<const double> a);

// |sum(F)-sum(A)| / (sum(F)+sum(A)) * 100. Both sums zero -> 0.
double s_ape(std::span<const double> f, std::span<const double> a);

// |stddev(F) - stddev(A)| with the sample (n-1) standard deviation.
double volatility_error(std::span<const double> f, std::span<const double> a);

// |G1(F) - G1(A)| with the adjusted Fisher-Pearson skewness coefficient.
// Needs length >= 3; zero-variance series have skewness 0.
double skewness_error(std::span<const double> f, std::span<const double> a);

double sample_stddev(std::span<const double> v);
double adjusted_skewness(std::span<const double> v);

struct MetricRow {
    std::string model;
    bool is_baseline = false;
    double rmse = 0, mae = 0, ve = 0, ske = 0, s_ape = 0, nc_rmse = 0;

    double metric(int i) const;  // column order: rmse, mae, ve, ske, s_ape, nc_rmse
};
inline constexpr int kMetricCount = 6;
extern const char* const kMetricNames[kMetricCount];

struct RankedRow {
    MetricRow row;
    double normalized[kMetricCount] = {};
    double onme = 0.0;
    double pifbb = 0.0;  // percent improvement of ONME over the best baseline
};

struct RankTable {
    std::vector<RankedRow> rows;  // ascending ONME
    std::string best_baseline;    // empty when no row is flagged as baseline
    double best_baseline_onme = 0.0;
};

// Column-normalizes each metric by its column sum (an all-zero column
// contributes 0 to every row), averages the six normalized scores into ONME,
// ranks ascending, and scores PIFBB against the lowest-ONME baseline row.
// Without any baseline row, PIFBB is reported as 0 for every row.
RankTable onme_table(const std::vector<MetricRow>& rows);

void write_rank_table_csv(const std::string& path, const RankTable& table);
nlohmann::json rank_table_json(const RankTable& table);

// Per-topic model comparison (bar-chart data): one line per
// (topic, metric, model) with the raw score and the score normalized by the
// per-(topic, metric) sum across models.
void write_per_topic_comparison_csv(const std::string& path,
                                    const std::map<std::string, std::vector<MetricRow>>& by_topic);

}  // namespace vam
