#include "vam/time.hpp"

#include <cctype>
#include <cstdio>
#include <stdexcept>

namespace vam {

namespace {

// Days since 1970-01-01 for a civil date (proleptic Gregorian).
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);               // [0, 399]
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;     // [0, 365]
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;              // [0, 146096]
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);            // [0, 146096]
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);            // [0, 365]
    const unsigned mp = (5 * doy + 2) / 153;                                 // [0, 11]
    d = doy - (153 * mp + 2) / 5 + 1;                                        // [1, 31]
    m = mp + (mp < 10 ? 3 : -9);                                             // [1, 12]
    y += (m <= 2);
}

bool all_digits(const std::string& s, std::size_t pos, std::size_t n) {
    if (pos + n > s.size()) return false;
    for (std::size_t i = pos; i < pos + n; ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

unsigned days_in_month(std::int64_t y, unsigned m) {
    static const unsigned base[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2) {
        const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
        return leap ? 29 : 28;
    }
    return base[m - 1];
}

}  // namespace

std::int64_t parse_iso8601_utc(const std::string& s) {
    // Accepted: YYYY-MM-DD{T, }HH:MM:SS with optional trailing Z.
    std::string t = s;
    if (!t.empty() && (t.back() == 'Z' || t.back() == 'z')) t.pop_back();
    if (t.size() != 19 || t[4] != '-' || t[7] != '-' || (t[10] != 'T' && t[10] != ' ') ||
        t[13] != ':' || t[16] != ':' || !all_digits(t, 0, 4) || !all_digits(t, 5, 2) ||
        !all_digits(t, 8, 2) || !all_digits(t, 11, 2) || !all_digits(t, 14, 2) ||
        !all_digits(t, 17, 2)) {
        throw std::invalid_argument("not an ISO-8601 UTC timestamp: '" + s + "'");
    }
    const std::int64_t y = std::stoll(t.substr(0, 4));
    const unsigned mo = static_cast<unsigned>(std::stoi(t.substr(5, 2)));
    const unsigned d = static_cast<unsigned>(std::stoi(t.substr(8, 2)));
    const int hh = std::stoi(t.substr(11, 2));
    const int mi = std::stoi(t.substr(14, 2));
    const int ss = std::stoi(t.substr(17, 2));
    if (mo < 1 || mo > 12 || d < 1 || d > days_in_month(y, mo) || hh > 23 || mi > 59 || ss > 59) {
        throw std::invalid_argument("timestamp field out of range: '" + s + "'");
    }
    return days_from_civil(y, mo, d) * 86400 + hh * 3600 + mi * 60 + ss;
}

std::string format_iso8601_utc(std::int64_t epoch_seconds) {
    std::int64_t days = epoch_seconds / 86400;
    std::int64_t rem = epoch_seconds % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    std::int64_t y;
    unsigned mo, d;
    civil_from_days(days, y, mo, d);
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ",
                  static_cast<long long>(y), mo, d, static_cast<long long>(rem / 3600),
                  static_cast<long long>((rem % 3600) / 60), static_cast<long long>(rem % 60));
    return buf;
}

}  // namespace vam
