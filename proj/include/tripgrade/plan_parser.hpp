#pragma once

#include <string>

#include "tripgrade/plan.hpp"

namespace tripgrade {

struct PlanFormatOptions {
  // benchmark plans are 3/5/7 days; turn off for free-form inputs
  bool benchmark_day_counts = true;
};

// Day-block text grammar. Throws ParseError with 1-based line plus
// expected/found on any malformed input; never coerces silently.
ItineraryPlan parse_plan(const std::string& text, const PlanFormatOptions& opts = {});

// Keyed form: a JSON array of day objects (or an object with a "plan" array),
// each with keys days, current_city, transportation, breakfast, attraction,
// lunch, dinner, accommodation, event, point_of_interest_list.
ItineraryPlan parse_plan_json(const std::string& json_text, const PlanFormatOptions& opts = {});

// Emits the same grammar parse_plan reads; serialize(parse(t)) is a fixed
// point: serializing once normalizes padding, after that bytes are stable.
std::string serialize_plan(const ItineraryPlan& plan);

std::string serialize_poi_visit(const PoIVisit& visit);

}  // namespace tripgrade
