#include "orgcoupling/time_util.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>

namespace orgcoupling {

namespace {

// Civil <-> day conversions use Howard Hinnant's algorithms, valid across
// the full int64 range we care about and independent of the C library's
// timezone machinery.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y += m <= 2;
}

bool days_in_month_ok(std::int64_t y, unsigned m, unsigned d) {
    static const unsigned lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m < 1 || m > 12 || d < 1) return false;
    unsigned len = lengths[m - 1];
    const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
    if (m == 2 && leap) len = 29;
    return d <= len;
}

bool parse_fixed_uint(const std::string& s, std::size_t pos, std::size_t len, unsigned& out) {
    if (pos + len > s.size()) return false;
    unsigned v = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        v = v * 10 + static_cast<unsigned>(s[i] - '0');
    }
    out = v;
    return true;
}

[[noreturn]] void bad_time(const std::string& text) {
    throw ParseError("invalid ISO-8601 timestamp: '" + text + "'");
}

}  // namespace

UnixTime parse_iso8601(const std::string& text) {
    unsigned year4 = 0, month = 0, day = 0;
    if (!parse_fixed_uint(text, 0, 4, year4) || text.size() < 10 ||
        text[4] != '-' || text[7] != '-' ||
        !parse_fixed_uint(text, 5, 2, month) || !parse_fixed_uint(text, 8, 2, day))
        bad_time(text);
    const std::int64_t year = year4;
    if (!days_in_month_ok(year, month, day)) bad_time(text);

    unsigned hour = 0, minute = 0, second = 0;
    std::size_t pos = 10;
    if (pos < text.size() && (text[pos] == 'T' || text[pos] == ' ')) {
        ++pos;
        if (!parse_fixed_uint(text, pos, 2, hour) || pos + 2 >= text.size() ||
            text[pos + 2] != ':' || !parse_fixed_uint(text, pos + 3, 2, minute))
            bad_time(text);
        pos += 5;
        if (pos < text.size() && text[pos] == ':') {
            if (!parse_fixed_uint(text, pos + 1, 2, second)) bad_time(text);
            pos += 3;
        }
        if (hour > 23 || minute > 59 || second > 60) bad_time(text);
    }

    std::int64_t offset = 0;
    if (pos < text.size()) {
        const char z = text[pos];
        if (z == 'Z') {
            ++pos;
        } else if (z == '+' || z == '-') {
            unsigned oh = 0, om = 0;
            if (!parse_fixed_uint(text, pos + 1, 2, oh)) bad_time(text);
            std::size_t mpos = pos + 3;
            if (mpos < text.size() && text[mpos] == ':') ++mpos;
            if (!parse_fixed_uint(text, mpos, 2, om)) bad_time(text);
            pos = mpos + 2;
            if (oh > 23 || om > 59) bad_time(text);
            offset = static_cast<std::int64_t>(oh) * 3600 + om * 60;
            if (z == '-') offset = -offset;
        } else {
            bad_time(text);
        }
    }
    if (pos != text.size()) bad_time(text);

    const std::int64_t days = days_from_civil(year, month, day);
    return days * 86400 + hour * 3600 + minute * 60 + second - offset;
}

std::string format_iso8601(UnixTime t) {
    std::int64_t days = t / 86400;
    std::int64_t rem = t % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    std::int64_t year = 0;
    unsigned month = 0, day = 0;
    civil_from_days(days, year, month, day);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ",
                  static_cast<long long>(year), month, day,
                  static_cast<long long>(rem / 3600),
                  static_cast<long long>((rem % 3600) / 60),
                  static_cast<long long>(rem % 60));
    return buf;
}

std::int64_t parse_duration_seconds(const std::string& text) {
    if (text.empty()) throw ParseError("empty duration");
    std::size_t i = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == 0) throw ParseError("invalid duration: '" + text + "'");
    const std::int64_t value = std::atoll(text.substr(0, i).c_str());
    std::int64_t unit = 1;
    if (i < text.size()) {
        if (i + 1 != text.size()) throw ParseError("invalid duration: '" + text + "'");
        switch (text[i]) {
            case 'd': unit = 86400; break;
            case 'h': unit = 3600; break;
            case 'm': unit = 60; break;
            case 's': unit = 1; break;
            default: throw ParseError("invalid duration unit in '" + text + "'");
        }
    }
    if (value <= 0) throw ParseError("duration must be positive: '" + text + "'");
    return value * unit;
}

}  // namespace orgcoupling
