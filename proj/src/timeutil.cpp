#include "tripgrade/timeutil.hpp"

#include <cctype>
#include <cstdio>

namespace tripgrade {

static bool digit(char c) { return c >= '0' && c <= '9'; }

std::optional<int> parse_time_minutes(std::string_view t) {
  size_t colon = t.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  std::string_view h = t.substr(0, colon), m = t.substr(colon + 1);
  if (h.empty() || h.size() > 2 || m.size() != 2) return std::nullopt;
  for (char c : h)
    if (!digit(c)) return std::nullopt;
  for (char c : m)
    if (!digit(c)) return std::nullopt;
  int hours = 0, mins = 0;
  for (char c : h) hours = hours * 10 + (c - '0');
  for (char c : m) mins = mins * 10 + (c - '0');
  if (hours > 23 || mins > 59) return std::nullopt;
  return hours * 60 + mins;
}

std::string format_time_minutes(int minutes) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02d:%02d", minutes / 60, minutes % 60);
  return buf;
}

bool is_iso_date(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
  for (size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
    if (!digit(s[i])) return false;
  int month = (s[5] - '0') * 10 + (s[6] - '0');
  int day = (s[8] - '0') * 10 + (s[9] - '0');
  return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

}  // namespace tripgrade
