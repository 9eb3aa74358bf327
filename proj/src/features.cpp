#include "vam/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace vam {

const char* output_kind_name(OutputKind k) {
    switch (k) {
        case OutputKind::activities: return "activities";
        case OutputKind::new_users: return "new_users";
        case OutputKind::old_users: return "old_users";
    }
    return "?";
}

std::string PlatformSet::code() const {
    std::string s;
    if (twitter) s += 'T';
    if (reddit) s += 'R';
    if (youtube) s += 'Y';
    return s;
}

PlatformSet PlatformSet::from_code(const std::string& code) {
    PlatformSet p;
    for (char c : code) {
        switch (c) {
            case 'T': case 't': p.twitter = true; break;
            case 'R': case 'r': p.reddit = true; break;
            case 'Y': case 'y': p.youtube = true; break;
            default:
                throw std::invalid_argument("unknown platform code '" + std::string(1, c) +
                                            "' (expected T, R, Y)");
        }
    }
    return p;
}

void FeatureConfig::validate() const {
    if (!platforms.any()) throw std::invalid_argument("feature config: empty platform set");
    if (lookback < 1) throw std::invalid_argument("feature config: lookback must be >= 1");
    if (horizon < 1) throw std::invalid_argument("feature config: horizon must be >= 1");
    if (topics.empty()) throw std::invalid_argument("feature config: no topics");
    std::set<std::string> uniq(topics.begin(), topics.end());
    if (uniq.size() != topics.size())
        throw std::invalid_argument("feature config: duplicate topics");
}

std::size_t FeatureConfig::feature_width() const {
    return series_roster(*this).size() * static_cast<std::size_t>(lookback) + topics.size();
}

const char* series_label(SeriesIndex s) {
    switch (s) {
        case 1: return "twitter_topic_new_users";
        case 2: return "twitter_topic_old_users";
        case 3: return "twitter_topic_activities";
        case 4: return "youtube_topic_new_users";
        case 5: return "youtube_topic_old_users";
        case 6: return "youtube_topic_activities";
        case 7: return "twitter_all_activities";
        case 8: return "twitter_all_new_users";
        case 9: return "twitter_all_old_users";
        case 10: return "youtube_all_activities";
        case 11: return "youtube_all_new_users";
        case 12: return "youtube_all_old_users";
        case 13: return "reddit_activities";
    }
    throw std::invalid_argument("series index out of range: " + std::to_string(s));
}

std::vector<SeriesIndex> series_roster(const FeatureConfig& config) {
    if (!config.platforms.any())
        throw std::invalid_argument("series_roster: empty platform set");
    std::vector<SeriesIndex> roster;
    for (SeriesIndex s = 1; s <= 13; ++s) {
        const bool is_twitter = (s >= 1 && s <= 3) || (s >= 7 && s <= 9);
        const bool is_youtube = (s >= 4 && s <= 6) || (s >= 10 && s <= 12);
        if (is_twitter && config.platforms.twitter) roster.push_back(s);
        else if (is_youtube && config.platforms.youtube) roster.push_back(s);
        else if (s == 13 && config.platforms.reddit) roster.push_back(s);
    }
    return roster;
}

SeriesBank SeriesBank::build(const EventLog& log, const UserLedger& ledger,
                             const std::vector<std::string>& topics, const HourRange& window) {
    SeriesBank bank;
    bank.window_ = window;
    for (const auto& topic : topics) {
        bank.twitter_topic_[topic] = bin_hourly(log, ledger, Platform::twitter, topic, window);
        bank.youtube_topic_[topic] = bin_hourly(log, ledger, Platform::youtube, topic, window);
    }
    bank.twitter_all_ = bin_hourly(log, ledger, Platform::twitter, kAllTopics, window);
    bank.youtube_all_ = bin_hourly(log, ledger, Platform::youtube, kAllTopics, window);
    bank.reddit_all_ = bin_hourly(log, ledger, Platform::reddit, kAllTopics, window);
    return bank;
}

const std::vector<std::int64_t>& SeriesBank::series(SeriesIndex s, const std::string& topic) const {
    auto topic_triple = [&](const std::map<std::string, VolumeTriple>& m) -> const VolumeTriple& {
        auto it = m.find(topic);
        if (it == m.end())
            throw std::out_of_range("topic not banked: " + topic);
        return it->second;
    };
    switch (s) {
        case 1: return topic_triple(twitter_topic_).new_users;
        case 2: return topic_triple(twitter_topic_).old_users;
        case 3: return topic_triple(twitter_topic_).activities;
        case 4: return topic_triple(youtube_topic_).new_users;
        case 5: return topic_triple(youtube_topic_).old_users;
        case 6: return topic_triple(youtube_topic_).activities;
        case 7: return twitter_all_.activities;
        case 8: return twitter_all_.new_users;
        case 9: return twitter_all_.old_users;
        case 10: return youtube_all_.activities;
        case 11: return youtube_all_.new_users;
        case 12: return youtube_all_.old_users;
        case 13: return reddit_all_.activities;
    }
    throw std::invalid_argument("series index out of range: " + std::to_string(s));
}

const VolumeTriple& SeriesBank::target_triple(const std::string& topic) const {
    auto it = twitter_topic_.find(topic);
    if (it == twitter_topic_.end()) throw std::out_of_range("topic not banked: " + topic);
    return it->second;
}

std::int64_t SeriesBank::value_at(SeriesIndex s, const std::string& topic, Hour h) const {
    if (!window_.contains(h)) throw std::out_of_range("hour outside banked window");
    return series(s, topic)[static_cast<std::size_t>(h - window_.first)];
}

double log_transform(double v) {
    if (v < 0) throw std::invalid_argument("log_transform: negative value");
    return std::log1p(v);
}

std::int64_t inverse_log_transform(double v) {
    const double count = std::expm1(v);
    if (count <= 0) return 0;
    return std::llround(count);
}

std::vector<double> build_feature_vector(const SeriesBank& bank, const std::string& topic,
                                         Hour t, const FeatureConfig& config) {
    config.validate();
    const auto roster = series_roster(config);
    const Hour earliest = bank.window().first + config.lookback - 1;
    if (t < earliest || t > bank.window().last) {
        std::ostringstream msg;
        msg << "anchor " << t << " outside feasible range; earliest valid anchor is " << earliest
            << " (" << format_hour(earliest) << ")";
        throw std::out_of_range(msg.str());
    }
    std::vector<double> x;
    x.reserve(config.feature_width());
    const std::size_t offset = static_cast<std::size_t>(t - config.lookback + 1 - bank.window().first);
    for (SeriesIndex s : roster) {
        const auto& vals = bank.series(s, topic);
        for (int k = 0; k < config.lookback; ++k)
            x.push_back(static_cast<double>(vals[offset + static_cast<std::size_t>(k)]));
    }
    for (const auto& name : config.topics) x.push_back(name == topic ? 1.0 : 0.0);
    return x;
}

SampleMatrix generate_samples(const SeriesBank& bank, const FeatureConfig& config,
                              const HourRange& period, int stride) {
    config.validate();
    if (stride < 1) throw std::invalid_argument("generate_samples: stride must be >= 1");
    if (period.empty()) throw std::invalid_argument("generate_samples: empty anchor period");

    const Hour earliest = bank.window().first + config.lookback - 1;
    const Hour latest = bank.window().last - config.horizon;
    if (period.first < earliest || period.last > latest) {
        std::ostringstream msg;
        msg << "anchor period [" << period.first << ", " << period.last
            << "] needs lookback/horizon headroom; admissible anchors are [" << earliest << ", "
            << latest << "]";
        throw std::out_of_range(msg.str());
    }

    std::vector<Hour> anchors;
    for (Hour t = period.first; t <= period.last; t += stride) anchors.push_back(t);
    if (anchors.empty()) throw std::invalid_argument("generate_samples: empty anchor set");

    SampleMatrix m;
    m.width = config.feature_width();
    m.horizon = config.horizon;
    const std::size_t yw = static_cast<std::size_t>(3 * config.horizon);
    m.x.reserve(config.topics.size() * anchors.size() * m.width);
    m.y.reserve(config.topics.size() * anchors.size() * yw);

    for (const auto& topic : config.topics) {
        const auto& target = bank.target_triple(topic);
        for (Hour t : anchors) {
            auto fx = build_feature_vector(bank, topic, t, config);
            m.x.insert(m.x.end(), fx.begin(), fx.end());
            const std::size_t base = static_cast<std::size_t>(t + 1 - bank.window().first);
            for (int h = 0; h < config.horizon; ++h)
                m.y.push_back(static_cast<double>(target.activities[base + h]));
            for (int h = 0; h < config.horizon; ++h)
                m.y.push_back(static_cast<double>(target.new_users[base + h]));
            for (int h = 0; h < config.horizon; ++h)
                m.y.push_back(static_cast<double>(target.old_users[base + h]));
            m.meta.push_back({topic, t});
        }
    }
    return m;
}

void write_samples_csv(const std::string& csv_path, const std::string& sidecar_path,
                       const SampleMatrix& samples, const FeatureConfig& config) {
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot write samples csv: " + csv_path);
    out << "topic,anchor";
    for (std::size_t j = 0; j < samples.width; ++j) out << ",x" << j;
    for (int j = 0; j < 3 * samples.horizon; ++j) out << ",y" << j;
    out << '\n';
    out.precision(17);
    for (std::size_t i = 0; i < samples.rows(); ++i) {
        out << samples.meta[i].topic << ',' << format_hour(samples.meta[i].anchor);
        for (double v : samples.row_x(i)) out << ',' << v;
        for (double v : samples.row_y(i)) out << ',' << v;
        out << '\n';
    }

    nlohmann::json side;
    side["platforms"] = config.platforms.code();
    side["lookback"] = config.lookback;
    side["horizon"] = config.horizon;
    side["topics"] = config.topics;
    side["roster"] = series_roster(config);
    nlohmann::json labels = nlohmann::json::array();
    for (SeriesIndex s : series_roster(config)) labels.push_back(series_label(s));
    side["roster_labels"] = labels;
    side["feature_width"] = samples.width;
    side["rows"] = samples.rows();
    std::ofstream sout(sidecar_path);
    if (!sout) throw std::runtime_error("cannot write samples sidecar: " + sidecar_path);
    sout << side.dump(2) << '\n';
}

}  // namespace vam
