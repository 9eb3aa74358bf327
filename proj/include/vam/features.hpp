#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "vam/events.hpp"
#include "vam/time.hpp"

namespace vam {

// Row order of the 3xS prediction matrix.
enum class OutputKind : int { activities = 0, new_users = 1, old_users = 2 };
inline constexpr int kOutputKinds = 3;
const char* output_kind_name(OutputKind k);

// Which platform feature blocks a model consumes, e.g. "TR" or "TRY".
struct PlatformSet {
    bool twitter = false;
    bool reddit = false;
    bool youtube = false;

    bool any() const { return twitter || reddit || youtube; }
    std::string code() const;                        // canonical "T"/"TR"/"TRY"...
    static PlatformSet from_code(const std::string&);  // accepts any order of T/R/Y
};

struct FeatureConfig {
    PlatformSet platforms;
    int lookback = 72;  // L_vol
    int horizon = 24;   // S
    std::vector<std::string> topics;  // ordered; defines the one-hot layout

    void validate() const;  // throws std::invalid_argument
    std::size_t feature_width() const;
};

// Canonical time-series categories. Per-topic series take the sample's topic;
// all-topic series are platform-wide; 13 is the single (untopiced) Reddit
// activity stream.
//    1 new(topic,T)   2 old(topic,T)   3 act(topic,T)
//    4 new(topic,Y)   5 old(topic,Y)   6 act(topic,Y)
//    7 act(all,T)     8 new(all,T)     9 old(all,T)
//   10 act(all,Y)    11 new(all,Y)    12 old(all,Y)
//   13 act(R)
using SeriesIndex = int;
const char* series_label(SeriesIndex s);

// Ordered series ids for a platform selection. Throws when no platform is
// selected.
std::vector<SeriesIndex> series_roster(const FeatureConfig& config);

// Holds every hourly series a feature vector can reference, densely over one
// window of bins.
class SeriesBank {
public:
    // Bins all (platform, topic) streams named by `topics` plus the
    // platform-wide aggregates and the Reddit stream. Topics absent from the
    // log yield all-zero series.
    static SeriesBank build(const EventLog& log, const UserLedger& ledger,
                            const std::vector<std::string>& topics, const HourRange& window);

    const HourRange& window() const { return window_; }

    // Value vector for a Table-II series id; per-topic ids need `topic`.
    const std::vector<std::int64_t>& series(SeriesIndex s, const std::string& topic) const;

    // The Twitter per-topic triple (prediction targets).
    const VolumeTriple& target_triple(const std::string& topic) const;

    std::int64_t value_at(SeriesIndex s, const std::string& topic, Hour h) const;

private:
    HourRange window_;
    std::map<std::string, VolumeTriple> twitter_topic_;
    std::map<std::string, VolumeTriple> youtube_topic_;
    VolumeTriple twitter_all_;
    VolumeTriple youtube_all_;
    VolumeTriple reddit_all_;
};

// ln(1+v); the model-space transform for count targets.
double log_transform(double v);
// round(max(0, exp(v)-1)); clamps model outputs back into counts.
std::int64_t inverse_log_transform(double v);

// Trailing lookback values of every roster series (oldest first) followed by
// the topic one-hot. Throws when T leaves no lookback headroom, naming the
// earliest valid anchor.
std::vector<double> build_feature_vector(const SeriesBank& bank, const std::string& topic,
                                         Hour t, const FeatureConfig& config);

struct SampleMeta {
    std::string topic;
    Hour anchor = 0;  // T; features end at T, targets span [T+1, T+S]
};

// Row-major sample block. Y rows hold the raw (untransformed) target counts
// laid out as S activities, then S new users, then S old users.
struct SampleMatrix {
    std::size_t width = 0;
    int horizon = 0;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<SampleMeta> meta;

    std::size_t rows() const { return meta.size(); }
    std::span<const double> row_x(std::size_t i) const { return {x.data() + i * width, width}; }
    std::span<const double> row_y(std::size_t i) const {
        const std::size_t w = static_cast<std::size_t>(3 * horizon);
        return {y.data() + i * w, w};
    }
    double target(std::size_t row, OutputKind kind, int hour_index) const {
        return y[row * static_cast<std::size_t>(3 * horizon) +
                 static_cast<std::size_t>(static_cast<int>(kind) * horizon + hour_index)];
    }
};

// One sample per (topic, anchor) with anchors stepping by `stride` through
// `period`. Every anchor must leave lookback headroom before it and horizon
// headroom after it inside the banked window.
SampleMatrix generate_samples(const SeriesBank& bank, const FeatureConfig& config,
                              const HourRange& period, int stride);

// CSV (header: topic, anchor, x0..,y0..) plus a JSON sidecar recording the
// config, roster, and topic order.
void write_samples_csv(const std::string& csv_path, const std::string& sidecar_path,
                       const SampleMatrix& samples, const FeatureConfig& config);

}  // namespace vam
