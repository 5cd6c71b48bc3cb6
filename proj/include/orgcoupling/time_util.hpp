#pragma once

#include "orgcoupling/types.hpp"

#include <string>

namespace orgcoupling {

// Accepts "2017-06-05T00:00:00Z", a bare date "2017-06-05" (midnight UTC),
// and numeric offsets ("+02:00", "-0500"). Throws ParseError otherwise.
UnixTime parse_iso8601(const std::string& text);

// Always renders UTC with a trailing 'Z'.
std::string format_iso8601(UnixTime t);

// "365d", "12h", "30m", "90s" or a bare second count.
std::int64_t parse_duration_seconds(const std::string& text);

}  // namespace orgcoupling
