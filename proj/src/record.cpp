#include "emailnet/record.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>

#include "emailnet/address.hpp"
#include "emailnet/errors.hpp"
#include "emailnet/textio.hpp"

namespace emailnet {

std::vector<std::string> EmailRecord::recipients() const {
    std::vector<std::string> all;
    all.reserve(to.size() + cc.size() + bcc.size());
    all.insert(all.end(), to.begin(), to.end());
    all.insert(all.end(), cc.begin(), cc.end());
    all.insert(all.end(), bcc.begin(), bcc.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

OwnerSpec::OwnerSpec(std::vector<std::string> addresses)
    : addresses_(std::move(addresses)) {
    if (addresses_.empty()) {
        throw_error(Errc::ConfigInvalid, "owner requires at least one address");
    }
    for (std::string& addr : addresses_) {
        auto canonical = canonicalize_address(addr);
        if (!canonical) {
            throw_error(Errc::ConfigInvalid, "owner address not canonical: " + addr);
        }
        addr = std::move(*canonical);
    }
    std::sort(addresses_.begin(), addresses_.end());
    addresses_.erase(std::unique(addresses_.begin(), addresses_.end()), addresses_.end());
}

bool OwnerSpec::contains(std::string_view addr) const {
    return std::binary_search(addresses_.begin(), addresses_.end(), addr);
}

const std::string& OwnerSpec::merge(const std::string& addr) const {
    return contains(addr) ? label() : addr;
}

namespace {

using std::chrono::days;
using std::chrono::hours;
using std::chrono::minutes;
using std::chrono::seconds;
using std::chrono::sys_days;

std::optional<int> parse_int(std::string_view text) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    return value;
}

std::optional<int> month_from_name(std::string_view name) {
    static constexpr std::array<std::string_view, 12> kMonths = {
        "jan", "feb", "mar", "apr", "may", "jun",
        "jul", "aug", "sep", "oct", "nov", "dec"};
    std::string lowered = to_lower(name);
    for (int i = 0; i < 12; ++i) {
        if (kMonths[static_cast<std::size_t>(i)] == lowered) return i + 1;
    }
    return std::nullopt;
}

// Minutes east of UTC, or nullopt for unrecognized zones.
std::optional<int> parse_zone(std::string_view zone) {
    if (zone.size() == 5 && (zone[0] == '+' || zone[0] == '-')) {
        auto hh = parse_int(zone.substr(1, 2));
        auto mm = parse_int(zone.substr(3, 2));
        if (!hh || !mm || *hh > 23 || *mm > 59) return std::nullopt;
        int total = *hh * 60 + *mm;
        return zone[0] == '-' ? -total : total;
    }
    static constexpr std::array<std::pair<std::string_view, int>, 11> kNamed = {{
        {"UT", 0},    {"GMT", 0},   {"UTC", 0},
        {"EST", -5 * 60}, {"EDT", -4 * 60},
        {"CST", -6 * 60}, {"CDT", -5 * 60},
        {"MST", -7 * 60}, {"MDT", -6 * 60},
        {"PST", -8 * 60}, {"PDT", -7 * 60},
    }};
    for (const auto& [name, offset] : kNamed) {
        if (zone == name) return offset;
    }
    return std::nullopt;
}

std::optional<Timestamp> compose_utc(int year, int month, int day,
                                     int hour, int minute, int second,
                                     int zone_minutes) {
    if (hour > 23 || minute > 59 || second > 60) return std::nullopt;
    std::chrono::year_month_day ymd{std::chrono::year{year},
                                    std::chrono::month{static_cast<unsigned>(month)},
                                    std::chrono::day{static_cast<unsigned>(day)}};
    if (!ymd.ok()) return std::nullopt;
    Timestamp local{sys_days{ymd} + hours{hour} + minutes{minute} + seconds{second}};
    return local - minutes{zone_minutes};
}

std::vector<std::string> whitespace_tokens(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!current.empty()) {
                tokens.push_back(std::move(current));
                current.clear();
            }
        } else {
            current += c;
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

}  // namespace

std::string format_timestamp(Timestamp ts) {
    sys_days day_point = std::chrono::floor<days>(ts);
    std::chrono::year_month_day ymd{day_point};
    std::chrono::hh_mm_ss<seconds> tod{ts - day_point};
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02ld:%02ld:%02ldZ",
                  static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                  static_cast<unsigned>(ymd.day()),
                  static_cast<long>(tod.hours().count()),
                  static_cast<long>(tod.minutes().count()),
                  static_cast<long>(tod.seconds().count()));
    return buf;
}

std::optional<Timestamp> parse_iso_timestamp(std::string_view text) {
    std::string s = trim(text);
    // YYYY-MM-DD{T or space}HH:MM:SS[.frac](Z|+HH:MM|+HHMM)
    if (s.size() < 20) return std::nullopt;
    if (s[4] != '-' || s[7] != '-' || (s[10] != 'T' && s[10] != ' ') ||
        s[13] != ':' || s[16] != ':') {
        return std::nullopt;
    }
    auto year = parse_int(std::string_view(s).substr(0, 4));
    auto month = parse_int(std::string_view(s).substr(5, 2));
    auto day = parse_int(std::string_view(s).substr(8, 2));
    auto hour = parse_int(std::string_view(s).substr(11, 2));
    auto minute = parse_int(std::string_view(s).substr(14, 2));
    auto second = parse_int(std::string_view(s).substr(17, 2));
    if (!year || !month || !day || !hour || !minute || !second) return std::nullopt;

    std::size_t pos = 19;
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        std::size_t digits = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            ++pos;
            ++digits;
        }
        if (digits == 0) return std::nullopt;
    }
    if (pos >= s.size()) return std::nullopt;  // zone required

    int zone_minutes = 0;
    if (s[pos] == 'Z' && pos + 1 == s.size()) {
        zone_minutes = 0;
    } else if (s[pos] == '+' || s[pos] == '-') {
        std::string zone(s.substr(pos));
        zone.erase(std::remove(zone.begin(), zone.end(), ':'), zone.end());
        auto offset = parse_zone(zone);
        if (!offset) return std::nullopt;
        zone_minutes = *offset;
    } else {
        return std::nullopt;
    }
    return compose_utc(*year, *month, *day, *hour, *minute, *second, zone_minutes);
}

std::optional<Timestamp> parse_rfc2822_date(std::string_view text) {
    std::string s = trim(text);
    // Drop a trailing comment such as "(PST)".
    if (!s.empty() && s.back() == ')') {
        std::size_t open = s.rfind('(');
        if (open == std::string::npos) return std::nullopt;
        s = trim(std::string_view(s).substr(0, open));
    }
    std::vector<std::string> tokens = whitespace_tokens(s);
    // Optional leading weekday ("Mon,"); the comma may also stand alone.
    if (!tokens.empty() && tokens.front() == ",") {
        tokens.erase(tokens.begin());
    } else if (!tokens.empty() && !tokens.front().empty() &&
               !std::isdigit(static_cast<unsigned char>(tokens.front()[0]))) {
        if (tokens.front().back() != ',') {
            if (tokens.size() > 1 && tokens[1] == ",") tokens.erase(tokens.begin() + 1);
            else return std::nullopt;
        }
        tokens.erase(tokens.begin());
    }
    if (tokens.size() != 5) return std::nullopt;

    auto day = parse_int(tokens[0]);
    auto month = month_from_name(tokens[1]);
    auto year = parse_int(tokens[2]);
    if (!day || !month || !year) return std::nullopt;
    if (tokens[2].size() == 2) {
        year = *year < 50 ? *year + 2000 : *year + 1900;  // obsolete two-digit years
    } else if (tokens[2].size() == 3) {
        year = *year + 1900;
    } else if (tokens[2].size() != 4) {
        return std::nullopt;
    }

    const std::string& time = tokens[3];
    int hour = 0, minute = 0, second = 0;
    if (time.size() == 8 && time[2] == ':' && time[5] == ':') {
        auto h = parse_int(std::string_view(time).substr(0, 2));
        auto m = parse_int(std::string_view(time).substr(3, 2));
        auto sec = parse_int(std::string_view(time).substr(6, 2));
        if (!h || !m || !sec) return std::nullopt;
        hour = *h; minute = *m; second = *sec;
    } else if (time.size() == 5 && time[2] == ':') {
        auto h = parse_int(std::string_view(time).substr(0, 2));
        auto m = parse_int(std::string_view(time).substr(3, 2));
        if (!h || !m) return std::nullopt;
        hour = *h; minute = *m;
    } else {
        return std::nullopt;
    }

    auto zone = parse_zone(tokens[4]);
    if (!zone) return std::nullopt;
    return compose_utc(*year, *month, *day, hour, minute, second, *zone);
}

}  // namespace emailnet
