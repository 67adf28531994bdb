#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tripgrade/vocab.hpp"

namespace tripgrade {

struct LocalConstraints {
  std::optional<std::string> house_rule;    // the thing to be allowed: "parties", "pets", ...
  std::set<std::string> cuisines;           // each must appear at least once
  std::optional<std::string> room_type;     // "entire room" | "private room" | "shared room" | "not shared room"
  std::optional<std::string> transportation;  // "no flight" | "no self-driving"
  std::set<std::string> event_types;
  std::set<std::string> attraction_types;
  bool any() const {
    return house_rule || room_type || transportation || !cuisines.empty() ||
           !event_types.empty() || !attraction_types.empty();
  }
};

struct Query {
  std::string org;
  std::string dest;  // city for 1-city trips, state for multi-city
  int days = 0;
  int visiting_city_number = 0;
  std::vector<std::string> dates;  // ISO, one per day
  int people_number = 1;
  LocalConstraints local;
  double budget = 0.0;
  std::string level;

  DurationClass duration_class() const { return duration_class_for_days(days); }
};

struct Persona {
  std::string traveler_type;  // "Laidback Traveler" | "Adventure Seeker"
  std::string purpose;
  std::string spending;
  std::string location;

  TravelerType traveler() const;  // throws UnknownTravelerTypeError
  std::vector<std::string> component_texts() const;  // the four bare values
};

struct QueryRecord {
  std::string id;
  Query query;
  Persona persona;
};

/// one {"id":..., "query":{...}, "persona":{...}} object per line
std::vector<QueryRecord> read_queries_jsonl(const std::string& path);
std::string query_record_to_json(const QueryRecord& record);

// single query object (wire keys "org", "dest", "date", "local_constraint", ...)
Query query_from_json(const std::string& json_text);

}  // namespace tripgrade
