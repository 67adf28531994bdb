#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tripgrade/plan.hpp"
#include "tripgrade/sandbox.hpp"

namespace tripgrade {

// A plan reference matched against the sandbox. City preference order:
// the city written in the field, else the day's current city (either side
// of a transition), else a unique global match.
struct ResolvedPlace {
  const PlaceRef* ref = nullptr;
  PoiKind expected = PoiKind::attraction;
  std::optional<PoIRecord> record;
  bool ambiguous = false;     // name exists in several cities, none selectable
  bool in_day_city = false;   // matched record sits in one of the day's cities

  bool found() const { return record.has_value(); }
};

struct ResolvedVisit {
  const PoIVisit* visit = nullptr;
  std::optional<PoIRecord> record;
  bool ambiguous = false;
  bool in_day_city = false;

  bool found() const { return record.has_value(); }
};

struct ResolvedFlight {
  const FlightLeg* leg = nullptr;
  const Flight* record = nullptr;  // null: unknown number/date or details differ
  std::string mismatch;            // why a known flight number failed to match
};

struct ResolvedEventRef {
  const PlaceRef* ref = nullptr;
  const EventRecord* record = nullptr;
  bool in_day_city = false;

  bool found() const { return record != nullptr; }
};

struct ResolvedDay {
  const DayRecord* day = nullptr;
  std::string date;                  // from the query's calendar, may be empty
  std::vector<std::string> cities;   // city_to first, city_from added on transitions
  std::optional<ResolvedFlight> flight;
  std::optional<ResolvedPlace> breakfast, lunch, dinner;
  std::vector<ResolvedPlace> attractions;
  std::optional<ResolvedPlace> accommodation;
  std::optional<ResolvedEventRef> event;
  std::vector<ResolvedVisit> visits;

  const std::optional<ResolvedPlace>& meal(MealKind m) const;
};

struct ResolvedPlan {
  const ItineraryPlan* plan = nullptr;
  const Sandbox* sandbox = nullptr;
  std::vector<ResolvedDay> days;
};

// dates align positionally with plan.days; pass {} when no calendar is known
// (flights then match on number + route + times instead of number + date)
ResolvedPlan resolve_plan(const ItineraryPlan& plan, const Sandbox& sandbox,
                          const std::vector<std::string>& dates = {});

}  // namespace tripgrade
