#pragma once

#include <cstdint>
#include <string>

namespace vam {

// Hours since the Unix epoch, UTC, aligned to :00.
using Hour = std::int64_t;

constexpr std::int64_t kSecondsPerHour = 3600;

inline Hour hour_of(std::int64_t epoch_seconds) {
    // Floor division so pre-1970 instants also land in the right bin.
    std::int64_t h = epoch_seconds / kSecondsPerHour;
    if (epoch_seconds % kSecondsPerHour < 0) --h;
    return h;
}

inline std::int64_t hour_start_seconds(Hour h) { return h * kSecondsPerHour; }

// Parses "YYYY-MM-DDTHH:MM:SS" (optional trailing 'Z', 'T' may be a space)
// into epoch seconds. Throws std::invalid_argument on malformed input.
std::int64_t parse_iso8601_utc(const std::string& s);

// Epoch seconds -> "YYYY-MM-DDTHH:MM:SSZ".
std::string format_iso8601_utc(std::int64_t epoch_seconds);

// Hour bin -> ISO string of its :00 start.
inline std::string format_hour(Hour h) { return format_iso8601_utc(hour_start_seconds(h)); }

// Closed hour range [first, last].
struct HourRange {
    Hour first = 0;
    Hour last = -1;

    bool empty() const { return last < first; }
    std::int64_t size() const { return empty() ? 0 : last - first + 1; }
    bool contains(Hour h) const { return h >= first && h <= last; }
};

}  // namespace vam
