#include "tripgrade/vocab.hpp"

#include <cmath>

#include "tripgrade/text.hpp"

namespace tripgrade {

const char* meal_name(MealKind m) {
  switch (m) {
    case MealKind::breakfast: return "breakfast";
    case MealKind::lunch: return "lunch";
    default: return "dinner";
  }
}

const char* poi_kind_name(PoiKind k) {
  switch (k) {
    case PoiKind::accommodation: return "accommodation";
    case PoiKind::attraction: return "attraction";
    default: return "restaurant";
  }
}

const char* room_type_name(RoomType t) {
  switch (t) {
    case RoomType::entire: return "Entire Room";
    case RoomType::private_room: return "Private Room";
    default: return "Shared Room";
  }
}

std::optional<RoomType> parse_room_type(std::string_view s) {
  std::string n = norm_name(s);
  if (n == "entire room" || n == "entire home/apt" || n == "entire home" || n == "entire apt")
    return RoomType::entire;
  if (n == "private room") return RoomType::private_room;
  if (n == "shared room") return RoomType::shared;
  return std::nullopt;
}

const char* event_type_name(EventType t) {
  switch (t) {
    case EventType::sports: return "Sports";
    case EventType::arts_theatre: return "Arts & Theatre";
    case EventType::music: return "Music";
    default: return "Film";
  }
}

std::optional<EventType> parse_event_type(std::string_view s) {
  std::string n = norm_name(s);
  if (n == "sports") return EventType::sports;
  if (n == "arts & theatre" || n == "arts and theatre" || n == "arts & theater")
    return EventType::arts_theatre;
  if (n == "music") return EventType::music;
  if (n == "film") return EventType::film;
  return std::nullopt;
}

const char* traveler_type_name(TravelerType t) {
  return t == TravelerType::laidback ? "Laidback Traveler" : "Adventure Seeker";
}

std::optional<TravelerType> parse_traveler_type(std::string_view s) {
  std::string n = norm_name(s);
  if (n == "laidback traveler" || n == "laidback") return TravelerType::laidback;
  if (n == "adventure seeker" || n == "adventurous" || n == "adventure")
    return TravelerType::adventure;
  return std::nullopt;
}

const char* duration_class_name(DurationClass c) {
  switch (c) {
    case DurationClass::d3: return "3-day";
    case DurationClass::d5: return "5-day";
    default: return "7-day";
  }
}

int duration_class_days(DurationClass c) {
  switch (c) {
    case DurationClass::d3: return 3;
    case DurationClass::d5: return 5;
    default: return 7;
  }
}

DurationClass duration_class_for_days(int days) {
  if (days <= 4) return DurationClass::d3;
  if (days <= 6) return DurationClass::d5;
  return DurationClass::d7;
}

int visiting_cities_for_days(int days) {
  switch (days) {
    case 3: return 1;
    case 5: return 2;
    case 7: return 3;
    default: return 0;
  }
}

const std::vector<CategoryDuration>& attraction_categories() {
  static const std::vector<CategoryDuration> kCats = {
      {"Boat Tours & Water Sports", 3.5},
      {"Casinos & Gambling", 2.5},
      {"Classes & Workshops", 1.5},
      {"Concerts & Shows", 2.5},
      {"Food & Drink", 2.5},
      {"Fun & Games", 1.5},
      {"Museums", 3.0},
      {"Nature & Parks", 4.5},
      {"Nightlife", 2.5},
      {"Outdoor Activities", 4.0},
      {"Shopping", 1.5},
      {"Sights & Landmarks", 3.0},
      {"Spas & Wellness", 2.0},
      {"Water & Amusement Parks", 5.0},
      {"Zoos & Aquariums", 2.5},
  };
  return kCats;
}

std::optional<double> category_hours(std::string_view name) {
  std::string n = norm_name(name);
  for (const auto& c : attraction_categories())
    if (norm_name(c.name) == n) return c.hours;
  return std::nullopt;
}

std::optional<std::string> canonical_category(std::string_view name) {
  std::string n = norm_name(name);
  for (const auto& c : attraction_categories())
    if (norm_name(c.name) == n) return c.name;
  return std::nullopt;
}

const std::vector<std::string>& cuisine_vocabulary() {
  static const std::vector<std::string> kCuisines = {
      "Chinese", "American", "Italian", "Mexican", "Indian", "Mediterranean", "French", "Other",
  };
  return kCuisines;
}

std::optional<std::string> canonical_cuisine(std::string_view name) {
  std::string n = norm_name(name);
  for (const auto& c : cuisine_vocabulary())
    if (norm_name(c) == n) return c;
  return std::nullopt;
}

const std::vector<std::string>& house_rule_vocabulary() {
  static const std::vector<std::string> kRules = {
      "No parties", "No smoking", "No children under 10", "No pets", "No visitors",
  };
  return kRules;
}

std::optional<std::string> canonical_house_rule_request(std::string_view s) {
  std::string n = norm_name(s);
  if (istarts_with(n, "no ")) n = n.substr(3);  // accept either phrasing
  for (const auto& rule : house_rule_vocabulary()) {
    std::string bare = norm_name(std::string_view(rule).substr(3));
    if (bare == n) return std::string(rule).substr(3);
  }
  return std::nullopt;
}

const std::vector<std::string>& persona_purposes() {
  static const std::vector<std::string> kPurposes = {
      "Relaxation", "Adventure", "Cultural Exploration", "Nature Escapes",
  };
  return kPurposes;
}

const std::vector<std::string>& persona_spending_levels() {
  static const std::vector<std::string> kSpending = {"Luxury Traveler", "Economical Traveler"};
  return kSpending;
}

const std::vector<std::string>& persona_locations() {
  static const std::vector<std::string> kLocations = {
      "Beaches", "Mountains", "Cities", "Wildlife and Forests",
  };
  return kLocations;
}

}  // namespace tripgrade
