#include "tripgrade/plan.hpp"

#include <unordered_set>

#include "tripgrade/text.hpp"

namespace tripgrade {

PlaceRef PlaceRef::from_text(const std::string& text) {
  PlaceRef ref;
  ref.raw = text;
  size_t comma = text.rfind(',');
  if (comma == std::string::npos) {
    ref.name = trim(text);
  } else {
    ref.name = trim(text.substr(0, comma));
    std::string city = trim(text.substr(comma + 1));
    if (!city.empty()) ref.city = city;
    if (ref.name.empty()) ref.name = trim(text);  // degenerate ", City"
  }
  return ref;
}

PlaceRef PlaceRef::make(const std::string& name, const std::string& city) {
  PlaceRef ref;
  ref.raw = name + ", " + city;
  ref.name = name;
  ref.city = city;
  return ref;
}

const std::optional<PlaceRef>& DayRecord::meal(MealKind m) const {
  switch (m) {
    case MealKind::breakfast: return breakfast;
    case MealKind::lunch: return lunch;
    default: return dinner;
  }
}

std::optional<PlaceRef>& DayRecord::meal(MealKind m) {
  switch (m) {
    case MealKind::breakfast: return breakfast;
    case MealKind::lunch: return lunch;
    default: return dinner;
  }
}

const PoIVisit* match_meal_visit(const DayRecord& day, MealKind meal) {
  const auto& field = day.meal(meal);
  if (!field) return nullptr;
  std::string by_name = norm_name(field->name);
  std::string by_raw = norm_name(field->raw);
  for (const auto& visit : day.poi_list) {
    std::string v = norm_name(visit.name);
    if (v == by_name || v == by_raw) return &visit;
  }
  return nullptr;
}

std::vector<std::string> unique_poi_names(const ItineraryPlan& plan) {
  std::vector<std::string> names;
  std::unordered_set<std::string> seen;
  for (const auto& day : plan.days)
    for (const auto& visit : day.poi_list)
      if (seen.insert(norm_name(visit.name)).second) names.push_back(visit.name);
  return names;
}

}  // namespace tripgrade
