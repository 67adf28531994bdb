#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace tripgrade {

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);

// lowercase + collapse internal whitespace runs to one space + trim;
// the equality key used everywhere names are compared
std::string norm_name(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);
std::vector<std::string> split_trimmed(std::string_view s, char sep);

bool iequals(std::string_view a, std::string_view b);
bool istarts_with(std::string_view s, std::string_view prefix);
bool icontains(std::string_view s, std::string_view needle);

// "98.06" / "100": fixed decimals with trailing zeros (and bare dot) removed
std::string format_compact(double v, int max_decimals = 2);

}  // namespace tripgrade
