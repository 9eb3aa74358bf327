#include "vam/events.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace vam {

using nlohmann::json;

const char* platform_name(Platform p) {
    switch (p) {
        case Platform::twitter: return "twitter";
        case Platform::youtube: return "youtube";
        case Platform::reddit: return "reddit";
    }
    return "?";
}

const char* action_name(ActionType a) {
    switch (a) {
        case ActionType::post: return "post";
        case ActionType::repost: return "repost";
        case ActionType::reply: return "reply";
        case ActionType::quote: return "quote";
    }
    return "?";
}

std::optional<Platform> platform_from_name(const std::string& s) {
    if (s == "twitter") return Platform::twitter;
    if (s == "youtube") return Platform::youtube;
    if (s == "reddit") return Platform::reddit;
    return std::nullopt;
}

std::optional<ActionType> action_from_name(const std::string& s) {
    if (s == "post") return ActionType::post;
    if (s == "repost") return ActionType::repost;
    if (s == "reply") return ActionType::reply;
    if (s == "quote") return ActionType::quote;
    return std::nullopt;
}

HourRange EventLog::span() const {
    if (events.empty()) return {};
    return {events.front().hour(), events.back().hour()};
}

namespace {

// Minimal CSV field splitter with double-quote escaping.
std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(field));
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    out.push_back(std::move(field));
    return out;
}

struct RawRecord {
    std::string ts, topic, child, parent, platform, action;
    bool parent_null = false;
};

// Validates one record; returns nullopt when the row is malformed.
std::optional<ActivityEvent> validate(const RawRecord& r, const std::optional<HourRange>& window) {
    ActivityEvent ev;
    try {
        ev.ts = parse_iso8601_utc(r.ts);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    const auto p = platform_from_name(r.platform);
    const auto a = action_from_name(r.action);
    if (!p || !a || r.child.empty()) return std::nullopt;
    ev.platform = *p;
    ev.action = *a;
    ev.child = r.child;
    ev.parent = (r.parent_null || r.parent.empty()) ? r.child : r.parent;
    if (ev.platform == Platform::reddit) {
        ev.topic = kAllTopics;  // Reddit streams are not split by topic
    } else {
        if (r.topic.empty()) return std::nullopt;
        ev.topic = r.topic;
    }
    if (window && !window->contains(ev.hour())) return std::nullopt;
    return ev;
}

}  // namespace

EventLog ingest_events_stream(std::istream& in, FileFormat format,
                              std::optional<HourRange> window) {
    EventLog log;
    std::string line;
    std::size_t row = 0;
    std::vector<std::string> header;

    auto record_bad = [&](std::size_t rownum) {
        ++log.malformed_rows;
        if (log.malformed_row_numbers.size() < 100) log.malformed_row_numbers.push_back(rownum);
    };

    while (std::getline(in, line)) {
        ++row;
        if (format == FileFormat::csv && row == 1) {
            header = split_csv_row(line);
            continue;
        }
        if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
        ++log.total_rows;

        RawRecord raw;
        bool shaped = true;
        if (format == FileFormat::jsonl) {
            json j = json::parse(line, nullptr, false);
            if (j.is_discarded() || !j.is_object()) {
                shaped = false;
            } else {
                auto get = [&](const char* k) -> std::string {
                    auto it = j.find(k);
                    if (it == j.end() || !it->is_string()) {
                        shaped = false;
                        return {};
                    }
                    return it->get<std::string>();
                };
                raw.ts = get("ts");
                raw.child = get("child");
                raw.platform = get("platform");
                raw.action = get("action");
                if (auto it = j.find("topic"); it != j.end() && it->is_string())
                    raw.topic = it->get<std::string>();
                if (auto it = j.find("parent"); it == j.end() || it->is_null())
                    raw.parent_null = true;
                else if (it->is_string())
                    raw.parent = it->get<std::string>();
                else
                    shaped = false;
            }
        } else {
            const auto fields = split_csv_row(line);
            if (fields.size() != header.size()) {
                shaped = false;
            } else {
                for (std::size_t i = 0; i < header.size(); ++i) {
                    const std::string& key = header[i];
                    if (key == "ts") raw.ts = fields[i];
                    else if (key == "topic") raw.topic = fields[i];
                    else if (key == "child") raw.child = fields[i];
                    else if (key == "parent") raw.parent = fields[i];
                    else if (key == "platform") raw.platform = fields[i];
                    else if (key == "action") raw.action = fields[i];
                }
            }
        }

        if (!shaped) {
            record_bad(row);
            continue;
        }
        if (auto ev = validate(raw, window)) {
            log.events.push_back(std::move(*ev));
        } else {
            record_bad(row);
        }
    }

    if (format == FileFormat::csv && header.empty() && log.total_rows > 0) {
        throw std::runtime_error("csv input has no header row");
    }
    if (log.total_rows > 0 &&
        static_cast<double>(log.malformed_rows) > 0.01 * static_cast<double>(log.total_rows)) {
        std::ostringstream msg;
        msg << log.malformed_rows << " of " << log.total_rows
            << " rows malformed (>1%); first bad rows:";
        for (std::size_t r2 : log.malformed_row_numbers) msg << ' ' << r2;
        throw std::runtime_error(msg.str());
    }

    std::stable_sort(log.events.begin(), log.events.end(),
                     [](const ActivityEvent& a, const ActivityEvent& b) { return a.ts < b.ts; });
    return log;
}

EventLog ingest_events(const std::string& path, FileFormat format,
                       std::optional<HourRange> window) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open event file: " + path);
    return ingest_events_stream(in, format, window);
}

UserLedger::UserLedger(const EventLog& log) {
    for (const auto& ev : log.events) {
        const Hour h = ev.hour();
        observe(ev.platform, ev.child, h);
        observe(ev.platform, ev.parent, h);
    }
}

void UserLedger::observe(Platform p, const std::string& user, Hour h) {
    auto& m = first_seen_[index(p)];
    auto [it, inserted] = m.try_emplace(user, h);
    if (!inserted && h < it->second) it->second = h;
}

std::optional<Hour> UserLedger::first_seen(Platform p, const std::string& user) const {
    const auto& m = first_seen_[index(p)];
    auto it = m.find(user);
    if (it == m.end()) return std::nullopt;
    return it->second;
}

bool UserLedger::is_new_at(Platform p, const std::string& user, Hour h) const {
    auto fs = first_seen(p, user);
    return fs && *fs == h;
}

bool UserLedger::is_old_at(Platform p, const std::string& user, Hour h) const {
    auto fs = first_seen(p, user);
    return fs && *fs < h;
}

std::int64_t TemporalGraph::total_weight() const {
    std::int64_t s = 0;
    for (const auto& e : edges) s += e.weight;
    return s;
}

std::vector<std::string> TemporalGraph::node_set() const {
    std::set<std::string> nodes;
    for (const auto& e : edges) {
        nodes.insert(e.child);
        nodes.insert(e.parent);
    }
    return {nodes.begin(), nodes.end()};
}

namespace {

bool event_matches(const ActivityEvent& ev, Platform platform, const std::string& topic) {
    if (ev.platform != platform) return false;
    return topic == kAllTopics || ev.topic == topic;
}

}  // namespace

VolumeTriple bin_hourly(const EventLog& log, const UserLedger& ledger, Platform platform,
                        const std::string& topic, const HourRange& window) {
    if (window.empty()) throw std::invalid_argument("bin_hourly: empty window");
    VolumeTriple v;
    v.topic = topic;
    v.first_bin = window.first;
    const std::size_t n = static_cast<std::size_t>(window.size());
    v.activities.assign(n, 0);
    v.old_users.assign(n, 0);
    v.new_users.assign(n, 0);

    // Distinct child users per bin, classified once per (bin, user).
    std::set<std::pair<Hour, std::string>> seen_in_bin;
    for (const auto& ev : log.events) {
        if (!event_matches(ev, platform, topic)) continue;
        const Hour h = ev.hour();
        if (!window.contains(h)) continue;
        const std::size_t i = static_cast<std::size_t>(h - window.first);
        ++v.activities[i];
        if (seen_in_bin.emplace(h, ev.child).second) {
            if (ledger.is_new_at(platform, ev.child, h)) {
                ++v.new_users[i];
            } else {
                ++v.old_users[i];
            }
        }
    }
    return v;
}

std::vector<TemporalGraph> build_temporal_graphs(const EventLog& log, Platform platform,
                                                 const std::string& topic,
                                                 const HourRange& window) {
    if (window.empty()) throw std::invalid_argument("build_temporal_graphs: empty window");
    const std::size_t n = static_cast<std::size_t>(window.size());
    std::vector<std::map<std::pair<std::string, std::string>, std::int64_t>> acc(n);
    for (const auto& ev : log.events) {
        if (!event_matches(ev, platform, topic)) continue;
        const Hour h = ev.hour();
        if (!window.contains(h)) continue;
        acc[static_cast<std::size_t>(h - window.first)][{ev.child, ev.parent}] += 1;
    }
    std::vector<TemporalGraph> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i].bin_start = window.first + static_cast<Hour>(i);
        out[i].edges.reserve(acc[i].size());
        for (const auto& [key, w] : acc[i]) out[i].edges.push_back({key.first, key.second, w});
    }
    return out;
}

TemporalGraph aggregate_graphs(const std::vector<TemporalGraph>& graphs, std::size_t first,
                               std::size_t count) {
    if (first + count > graphs.size()) throw std::out_of_range("aggregate_graphs: span");
    TemporalGraph g;
    g.bin_start = count > 0 ? graphs[first].bin_start : 0;
    std::map<std::pair<std::string, std::string>, std::int64_t> acc;
    for (std::size_t i = first; i < first + count; ++i)
        for (const auto& e : graphs[i].edges) acc[{e.child, e.parent}] += e.weight;
    g.edges.reserve(acc.size());
    for (const auto& [key, w] : acc) g.edges.push_back({key.first, key.second, w});
    return g;
}

void write_graph_sequence(std::ostream& out, const std::vector<TemporalGraph>& graphs) {
    for (const auto& g : graphs) {
        json edges = json::array();
        for (const auto& e : g.edges) edges.push_back({e.child, e.parent, e.weight});
        json line = {{"bin_start", format_hour(g.bin_start)}, {"edges", std::move(edges)}};
        out << line.dump() << '\n';
    }
}

void write_graph_sequence(const std::string& path, const std::vector<TemporalGraph>& graphs) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write graph file: " + path);
    write_graph_sequence(out, graphs);
}

std::vector<TemporalGraph> read_graph_sequence(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    std::vector<TemporalGraph> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json j = json::parse(line);
        TemporalGraph g;
        g.bin_start = hour_of(parse_iso8601_utc(j.at("bin_start").get<std::string>()));
        for (const auto& e : j.at("edges")) {
            g.edges.push_back({e.at(0).get<std::string>(), e.at(1).get<std::string>(),
                               e.at(2).get<std::int64_t>()});
        }
        out.push_back(std::move(g));
    }
    return out;
}

void write_events_jsonl(const std::string& path, const EventLog& log) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write event file: " + path);
    for (const auto& ev : log.events) {
        json j = {{"ts", format_iso8601_utc(ev.ts)},
                  {"topic", ev.topic},
                  {"child", ev.child},
                  {"parent", ev.parent},
                  {"platform", platform_name(ev.platform)},
                  {"action", action_name(ev.action)}};
        out << j.dump() << '\n';
    }
}

}  // namespace vam
