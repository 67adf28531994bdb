#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tripgrade/vocab.hpp"

namespace tripgrade {

struct TimeWindow {
  int start_min = 0;
  int end_min = 0;
  bool wraps_midnight = false;  // only stays may wrap; inferred from end < start

  int effective_end_min() const { return end_min + (wraps_midnight ? 24 * 60 : 0); }
  double duration_hours() const { return (effective_end_min() - start_min) / 60.0; }
  double midpoint_hours() const { return (start_min + effective_end_min()) / 120.0; }
};

enum class VisitVerb { stay, visit };

struct PoIVisit {
  std::string name;
  PoiKind kind = PoiKind::attraction;  // stay => accommodation; visits classified by day fields
  VisitVerb verb = VisitVerb::visit;
  TimeWindow window;
  std::string transit_stop;
  double transit_distance_m = 0.0;
};

// a "Name, City" field value; raw survives verbatim for serialization,
// name/city come from splitting at the last comma (city names carry none)
struct PlaceRef {
  std::string raw;
  std::string name;
  std::optional<std::string> city;

  static PlaceRef from_text(const std::string& text);
  static PlaceRef make(const std::string& name, const std::string& city);
};

struct FlightLeg {
  std::string flight_number;
  std::string origin;
  std::string dest;
  int departure_min = 0;
  int arrival_min = 0;
  bool wraps_midnight() const { return arrival_min < departure_min; }
};

struct Transportation {
  enum class Mode { none, flight, other };
  Mode mode = Mode::none;
  std::optional<FlightLeg> flight;  // set iff mode == flight
  std::string text;                 // verbatim for mode == other
};

struct DayRecord {
  int day_index = 0;  // as written: "Day 3:" -> 3
  std::string city_from;
  std::string city_to;
  Transportation transportation;
  std::optional<PlaceRef> breakfast, lunch, dinner;
  std::vector<PlaceRef> attractions;
  std::optional<PlaceRef> accommodation;
  std::optional<PlaceRef> event;
  std::vector<PoIVisit> poi_list;

  bool is_transition() const { return city_from != city_to; }
  const std::optional<PlaceRef>& meal(MealKind m) const;
  std::optional<PlaceRef>& meal(MealKind m);
};

struct ItineraryPlan {
  std::vector<DayRecord> days;
};

// first PoI-list entry whose normalized name matches the day's meal field
// (either the split name or the raw text); nullptr when absent or unmatched
const PoIVisit* match_meal_visit(const DayRecord& day, MealKind meal);

// deduplicated PoI names across the whole plan, first-seen spelling, list order
std::vector<std::string> unique_poi_names(const ItineraryPlan& plan);

}  // namespace tripgrade
