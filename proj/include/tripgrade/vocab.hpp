#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tripgrade {

enum class MealKind { breakfast, lunch, dinner };
constexpr std::array<MealKind, 3> kMealKinds = {MealKind::breakfast, MealKind::lunch,
                                                MealKind::dinner};
const char* meal_name(MealKind m);

enum class PoiKind { accommodation, attraction, restaurant };
const char* poi_kind_name(PoiKind k);

enum class RoomType { entire, private_room, shared };
const char* room_type_name(RoomType t);
std::optional<RoomType> parse_room_type(std::string_view s);

enum class EventType { sports, arts_theatre, music, film };
const char* event_type_name(EventType t);
std::optional<EventType> parse_event_type(std::string_view s);

enum class TravelerType { laidback, adventure };
const char* traveler_type_name(TravelerType t);  // "Laidback Traveler" / "Adventure Seeker"
std::optional<TravelerType> parse_traveler_type(std::string_view s);

enum class DurationClass { d3, d5, d7 };
constexpr std::array<DurationClass, 3> kDurationClasses = {DurationClass::d3, DurationClass::d5,
                                                           DurationClass::d7};
const char* duration_class_name(DurationClass c);  // "3-day" etc.
int duration_class_days(DurationClass c);
DurationClass duration_class_for_days(int days);  // nearest of {3,5,7}
int visiting_cities_for_days(int days);           // 3->1, 5->2, 7->3

struct CategoryDuration {
  std::string name;
  double hours;
};
// the 15 attraction categories with their expected visit hours
const std::vector<CategoryDuration>& attraction_categories();
std::optional<double> category_hours(std::string_view name);
std::optional<std::string> canonical_category(std::string_view name);

// 7 requestable cuisines + "Other"
const std::vector<std::string>& cuisine_vocabulary();
std::optional<std::string> canonical_cuisine(std::string_view name);

// "No parties", "No smoking", "No children under 10", "No pets", "No visitors"
const std::vector<std::string>& house_rule_vocabulary();
// query side names the thing to be allowed: "parties", ..., "children under 10"
std::optional<std::string> canonical_house_rule_request(std::string_view s);

// persona vocabularies used by the generator
const std::vector<std::string>& persona_purposes();
const std::vector<std::string>& persona_spending_levels();
const std::vector<std::string>& persona_locations();

}  // namespace tripgrade
