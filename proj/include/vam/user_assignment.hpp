#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "vam/events.hpp"
#include "vam/rng.hpp"

namespace vam {

// One aggregated (hour, child, parent) interaction inside the trailing
// user-assignment window, with new/old flags taken at the record's hour.
struct HistoryRecord {
    Hour hour = 0;
    std::string child;
    std::string parent;
    std::int64_t weight = 0;
    bool child_is_new = false;
    bool parent_is_new = false;
};

struct HistoryTable {
    HourRange window;  // [T - L_user + 1, T]
    std::vector<HistoryRecord> records;

    bool empty() const { return records.empty(); }
};

// One record per edge of each trailing graph. The caller passes exactly the
// last L_user graphs.
HistoryTable build_history(std::span<const TemporalGraph> graphs, const UserLedger& ledger,
                           Platform platform);

struct UserAttributes {
    double activity_prob = 0.0;
    double influence_prob = 0.0;
    std::vector<std::string> parent_list;  // ordered by weight desc, then id
    std::vector<double> parent_probs;      // simplex over parent_list
};

// Attributes for every user that acted (child role) inside the window.
// Activity shares normalize over total action weight; influence shares over
// total received weight excluding self-loops.
struct AttributeSet {
    std::vector<std::string> users;  // sorted ascending
    std::vector<UserAttributes> attrs;
    std::unordered_map<std::string, std::size_t> index;

    bool empty() const { return users.empty(); }
};
AttributeSet derive_attributes(const HistoryTable& h);

// Attribute templates cloned onto synthesized new users. Rows are copies of
// old-user attributes drawn with replacement, weighted by activity share.
struct ArchetypeTable {
    std::vector<UserAttributes> rows;
    bool empty() const { return rows.empty(); }
};
ArchetypeTable build_archetypes(const AttributeSet& pool, int capacity, Rng& rng);
ArchetypeTable build_archetypes(const HistoryTable& h, int capacity, Rng& rng);

// Generates collision-free synthetic user ids "sim:{trial}:{hour}:{counter}".
struct NewUserNamer {
    int trial = 0;
    Hour hour = 0;
    std::int64_t counter = 0;

    std::string next() {
        return "sim:" + std::to_string(trial) + ":" + std::to_string(hour) + ":" +
               std::to_string(counter++);
    }
};

struct AssignCounts {
    std::int64_t activities = 0;
    std::int64_t old_users = 0;
    std::int64_t new_users = 0;
};

struct AssignResult {
    TemporalGraph graph;
    std::vector<std::string> active_new_users;  // new children that act in the bin
    std::vector<std::string> active_old_users;
    std::int64_t trimmed_active = 0;  // selected actives dropped when activities < actives
};

// Samples the active old-user set without replacement, synthesizes new users
// from archetypes, hands every active user one action plus a multinomial
// share of the remainder, then draws each action's parent from the child's
// parent distribution.
AssignResult assign_hour(const AttributeSet& attrs, const AssignCounts& counts,
                         const ArchetypeTable& archetypes, Rng& rng, Hour bin_start,
                         NewUserNamer& namer);

struct SimulateOptions {
    int user_lookback = 24;       // L_user
    int archetype_capacity = 1000;
    int trial = 0;
    Platform platform = Platform::twitter;
};

struct SimulatedGraphSequence {
    std::vector<TemporalGraph> graphs;
    std::vector<std::vector<std::string>> new_users_per_hour;
    std::int64_t total_trimmed = 0;
    std::vector<std::string> trim_log;  // one line per hour with a discrepancy
};

// Rolls the history window forward one predicted hour at a time: rebuild the
// table (simulated graphs slide in), refresh attributes and archetypes,
// assign the hour's counts, then fold the generated users into the working
// ledger so they join the old-user pool next hour.
SimulatedGraphSequence simulate(const std::vector<std::vector<std::int64_t>>& volume_matrix,
                                std::span<const TemporalGraph> recent, const UserLedger& ledger,
                                std::uint64_t seed, const SimulateOptions& options);

}  // namespace vam
