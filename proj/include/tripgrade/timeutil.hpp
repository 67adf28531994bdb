#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace tripgrade {

// "H:MM" or "HH:MM", 0 <= H <= 23, exactly two minute digits 00..59.
// Anything else -> nullopt; callers turn that into their own error.
std::optional<int> parse_time_minutes(std::string_view text);

std::string format_time_minutes(int minutes);  // zero-padded "HH:MM"

inline double minutes_to_hours(int m) { return m / 60.0; }

// "YYYY-MM-DD" with plausible month/day; no calendar math is ever done on it
bool is_iso_date(std::string_view s);

}  // namespace tripgrade
