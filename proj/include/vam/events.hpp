#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "vam/time.hpp"

namespace vam {

enum class Platform { twitter, youtube, reddit };
enum class ActionType { post, repost, reply, quote };

const char* platform_name(Platform p);
const char* action_name(ActionType a);
std::optional<Platform> platform_from_name(const std::string& s);
std::optional<ActionType> action_from_name(const std::string& s);

// Reserved topic for streams that are not split by topic (Reddit) and for
// platform-wide aggregate series.
inline const std::string kAllTopics = "__all__";

// One timestamped child->parent interaction. Root posts store the author in
// both roles so every activity owns exactly one edge.
struct ActivityEvent {
    std::int64_t ts = 0;  // epoch seconds, UTC
    std::string topic;
    std::string child;   // acting user
    std::string parent;  // receiving user; == child for root posts
    Platform platform = Platform::twitter;
    ActionType action = ActionType::post;

    Hour hour() const { return hour_of(ts); }
};

struct EventLog {
    std::vector<ActivityEvent> events;  // sorted ascending by ts (stable)
    std::size_t total_rows = 0;
    std::size_t malformed_rows = 0;
    std::vector<std::size_t> malformed_row_numbers;  // 1-based, capped at 100

    bool empty() const { return events.empty(); }
    // Hour span covered by the events; empty range when the log is empty.
    HourRange span() const;
};

enum class FileFormat { jsonl, csv };

// Reads an event file. Rows failing to parse are counted and skipped; more
// than 1% malformed rows is fatal. An optional corpus window makes
// out-of-window timestamps malformed too.
EventLog ingest_events(const std::string& path, FileFormat format,
                       std::optional<HourRange> window = std::nullopt);
EventLog ingest_events_stream(std::istream& in, FileFormat format,
                              std::optional<HourRange> window = std::nullopt);

// First hour each user appears on a platform, in either role. Novelty is
// platform-global, not per-topic: one user is "new" exactly once.
class UserLedger {
public:
    UserLedger() = default;
    explicit UserLedger(const EventLog& log);

    void observe(Platform p, const std::string& user, Hour h);

    std::optional<Hour> first_seen(Platform p, const std::string& user) const;
    bool is_new_at(Platform p, const std::string& user, Hour h) const;
    bool is_old_at(Platform p, const std::string& user, Hour h) const;

    std::size_t user_count(Platform p) const { return first_seen_[index(p)].size(); }
    const std::unordered_map<std::string, Hour>& table(Platform p) const {
        return first_seen_[index(p)];
    }

private:
    static std::size_t index(Platform p) { return static_cast<std::size_t>(p); }
    std::unordered_map<std::string, Hour> first_seen_[3];
};

struct WeightedEdge {
    std::string child;
    std::string parent;
    std::int64_t weight = 0;
};

// Weighted directed user graph for one hourly bin. Edges are unique
// (child,parent) pairs sorted lexicographically; nodes are exactly the edge
// endpoints.
struct TemporalGraph {
    Hour bin_start = 0;
    std::vector<WeightedEdge> edges;

    std::int64_t total_weight() const;
    std::vector<std::string> node_set() const;  // sorted unique endpoints
    bool empty() const { return edges.empty(); }
};

// The three hourly series for one (platform, topic) stream over a dense
// window of bins.
struct VolumeTriple {
    std::string topic;
    Hour first_bin = 0;
    std::vector<std::int64_t> activities;
    std::vector<std::int64_t> old_users;
    std::vector<std::int64_t> new_users;

    std::size_t size() const { return activities.size(); }
    Hour bin_start(std::size_t i) const { return first_bin + static_cast<Hour>(i); }
};

// Hourly activity/old/new series for `topic` on `platform` over `window`.
// kAllTopics selects every event on the platform. New/old counts classify the
// distinct child users of each bin against the ledger.
VolumeTriple bin_hourly(const EventLog& log, const UserLedger& ledger, Platform platform,
                        const std::string& topic, const HourRange& window);

// One graph per hour of `window`; edge weight = number of (child,parent)
// events in the bin.
std::vector<TemporalGraph> build_temporal_graphs(const EventLog& log, Platform platform,
                                                 const std::string& topic,
                                                 const HourRange& window);

// Sums a span of hourly graphs into one weighted graph (bin_start taken from
// the first element).
TemporalGraph aggregate_graphs(const std::vector<TemporalGraph>& graphs, std::size_t first,
                               std::size_t count);

// JSONL graph-sequence exchange format:
//   {"bin_start":"2020-04-02T00:00:00Z","edges":[["a","b",2],...]}
void write_graph_sequence(std::ostream& out, const std::vector<TemporalGraph>& graphs);
void write_graph_sequence(const std::string& path, const std::vector<TemporalGraph>& graphs);
std::vector<TemporalGraph> read_graph_sequence(const std::string& path);

void write_events_jsonl(const std::string& path, const EventLog& log);

}  // namespace vam
