#include "vam/ts_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace vam {

namespace {

void require_same_nonzero_length(std::span<const double> f, std::span<const double> a) {
    if (f.size() != a.size()) throw std::invalid_argument("metric: series length mismatch");
    if (f.empty()) throw std::invalid_argument("metric: empty series");
}

void require_non_negative(std::span<const double> v, const char* what) {
    for (double x : v)
        if (x < 0) throw std::invalid_argument(std::string(what) + ": negative series value");
}

}  // namespace

const char* const kMetricNames[kMetricCount] = {"rmse", "mae", "ve", "ske", "s_ape", "nc_rmse"};

double MetricRow::metric(int i) const {
    switch (i) {
        case 0: return rmse;
        case 1: return mae;
        case 2: return ve;
        case 3: return ske;
        case 4: return s_ape;
        case 5: return nc_rmse;
    }
    throw std::out_of_range("metric index");
}

double rmse(std::span<const double> f, std::span<const double> a) {
    require_same_nonzero_length(f, a);
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double d = f[i] - a[i];
        s += d * d;
    }
    return std::sqrt(s / static_cast<double>(f.size()));
}

double mae(std::span<const double> f, std::span<const double> a) {
    require_same_nonzero_length(f, a);
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += std::fabs(f[i] - a[i]);
    return s / static_cast<double>(f.size());
}

double nc_rmse(std::span<const double> f, std::span<const double> a) {
    require_same_nonzero_length(f, a);
    require_non_negative(f, "nc_rmse");
    require_non_negative(a, "nc_rmse");
    auto normalized_cumulative = [](std::span<const double> v) {
        std::vector<double> c(v.size());
        double run = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            run += v[i];
            c[i] = run;
        }
        const double peak = c.back();  // max of a non-decreasing series
        if (peak > 0)
            for (double& x : c) x /= peak;
        return c;
    };
    const auto cf = normalized_cumulative(f);
    const auto ca = normalized_cumulative(a);
    return rmse(cf, ca);
}

double s_ape(std::span<const double> f, std::span<const double> a) {
    require_non_negative(f, "s_ape");
    require_non_negative(a, "s_ape");
    const double sf = std::accumulate(f.begin(), f.end(), 0.0);
    const double sa = std::accumulate(a.begin(), a.end(), 0.0);
    if (sf + sa == 0.0) return 0.0;
    return std::fabs(sf - sa) / (sf + sa) * 100.0;
}

double sample_stddev(std::span<const double> v) {
    if (v.size() < 2) throw std::invalid_argument("stddev: need at least 2 values");
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double s = 0.0;
    for (double x : v) {
        const double d = x - mean;
        s += d * d;
    }
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

double adjusted_skewness(std::span<const double> v) {
    const double n = static_cast<double>(v.size());
    if (v.size() < 3) throw std::invalid_argument("skewness: need at least 3 values");
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double m2 = 0.0, m3 = 0.0;
    for (double x : v) {
        const double d = x - mean;
        m2 += d * d;
        m3 += d * d * d;
    }
    m2 /= n;
    m3 /= n;
    if (m2 == 0.0) return 0.0;
    const double g1 = m3 / std::pow(m2, 1.5);
    return g1 * std::sqrt(n * (n - 1.0)) / (n - 2.0);
}

double volatility_error(std::span<const double> f, std::span<const double> a) {
    require_same_nonzero_length(f, a);
    return std::fabs(sample_stddev(f) - sample_stddev(a));
}

double skewness_error(std::span<const double> f, std::span<const double> a) {
    require_same_nonzero_length(f, a);
    return std::fabs(adjusted_skewness(f) - adjusted_skewness(a));
}

RankTable onme_table(const std::vector<MetricRow>& rows) {
    if (rows.size() < 2) throw std::invalid_argument("onme_table: need at least 2 rows");
    for (const auto& r : rows)
        for (int j = 0; j < kMetricCount; ++j)
            if (r.metric(j) < 0)
                throw std::invalid_argument("onme_table: negative metric value for " + r.model);

    double colsum[kMetricCount] = {};
    for (const auto& r : rows)
        for (int j = 0; j < kMetricCount; ++j) colsum[j] += r.metric(j);

    RankTable table;
    table.rows.reserve(rows.size());
    for (const auto& r : rows) {
        RankedRow rr;
        rr.row = r;
        double acc = 0.0;
        for (int j = 0; j < kMetricCount; ++j) {
            rr.normalized[j] = colsum[j] > 0 ? r.metric(j) / colsum[j] : 0.0;
            acc += rr.normalized[j];
        }
        rr.onme = acc / kMetricCount;
        table.rows.push_back(std::move(rr));
    }

    double best = 0.0;
    for (const auto& rr : table.rows) {
        if (!rr.row.is_baseline) continue;
        if (table.best_baseline.empty() || rr.onme < best) {
            best = rr.onme;
            table.best_baseline = rr.row.model;
        }
    }
    table.best_baseline_onme = best;
    for (auto& rr : table.rows)
        rr.pifbb = table.best_baseline.empty() || best == 0.0
                       ? 0.0
                       : 100.0 * (best - rr.onme) / best;

    std::stable_sort(table.rows.begin(), table.rows.end(),
                     [](const RankedRow& a, const RankedRow& b) { return a.onme < b.onme; });
    return table;
}

void write_rank_table_csv(const std::string& path, const RankTable& table) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write rank table: " + path);
    out.precision(10);
    out << "rank,model,rmse,mae,ve,ske,s_ape,nc_rmse,onme,pifbb\n";
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& rr = table.rows[i];
        out << (i + 1) << ',' << rr.row.model;
        for (int j = 0; j < kMetricCount; ++j) out << ',' << rr.row.metric(j);
        out << ',' << rr.onme << ',' << rr.pifbb << '\n';
    }
}

nlohmann::json rank_table_json(const RankTable& table) {
    nlohmann::json j;
    j["best_baseline"] = table.best_baseline;
    j["best_baseline_onme"] = table.best_baseline_onme;
    auto rows = nlohmann::json::array();
    for (const auto& rr : table.rows) {
        nlohmann::json r;
        r["model"] = rr.row.model;
        r["is_baseline"] = rr.row.is_baseline;
        for (int k = 0; k < kMetricCount; ++k) r[kMetricNames[k]] = rr.row.metric(k);
        r["onme"] = rr.onme;
        r["pifbb"] = rr.pifbb;
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j;
}

void write_per_topic_comparison_csv(
    const std::string& path, const std::map<std::string, std::vector<MetricRow>>& by_topic) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write per-topic comparison: " + path);
    out.precision(10);
    out << "topic,metric,model,score,normalized\n";
    for (const auto& [topic, models] : by_topic) {
        for (int j = 0; j < kMetricCount; ++j) {
            double colsum = 0.0;
            for (const auto& m : models) colsum += m.metric(j);
            for (const auto& m : models) {
                const double norm = colsum > 0 ? m.metric(j) / colsum : 0.0;
                out << topic << ',' << kMetricNames[j] << ',' << m.model << ',' << m.metric(j)
                    << ',' << norm << '\n';
            }
        }
    }
}

}  // namespace vam
