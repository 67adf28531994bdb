#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tripgrade/vocab.hpp"

namespace tripgrade {

struct City {
  std::string name;
  std::string state;
};

struct Flight {
  std::string flight_number;
  std::string origin;
  std::string dest;
  std::string date;  // ISO YYYY-MM-DD
  int departure_min = 0;
  int arrival_min = 0;
  double price = 0.0;
};

struct Restaurant {
  std::string name;
  std::string city;
  std::vector<std::string> cuisines;  // canonical labels, at least one
  double avg_cost = 0.0;
};

struct Attraction {
  std::string name;
  std::string city;
  std::vector<std::string> categories;  // canonical labels, at least one
  double visit_duration_h = 0.0;        // mean of category hours when file omits it
};

struct Accommodation {
  std::string name;
  std::string city;
  RoomType room_type = RoomType::entire;
  std::vector<std::string> house_rules;  // canonical "No ..." labels
  double price_per_night = 0.0;
  std::optional<int> max_occupancy;
};

struct EventRecord {
  std::string name;
  std::string city;
  std::string date;
  EventType type = EventType::music;
};

struct TransitLink {
  std::string poi_name;
  std::string city;
  std::string stop_name;
  double distance_m = 0.0;
};

struct DistanceRecord {
  std::string from_poi;
  std::string to_poi;
  std::string city;
  double distance_m = 0.0;
  double travel_time_min = 0.0;
};

struct PoIRecord {
  PoiKind kind = PoiKind::attraction;
  const Restaurant* restaurant = nullptr;
  const Attraction* attraction = nullptr;
  const Accommodation* accommodation = nullptr;

  const std::string& name() const;
  const std::string& city() const;
};

// raw collections before validation/indexing; what the loader parses and
// what the generator builds, so both go through the same consistency gate
struct SandboxData {
  std::vector<City> cities;
  std::vector<Flight> flights;
  std::vector<Restaurant> restaurants;
  std::vector<Attraction> attractions;
  std::vector<Accommodation> accommodations;
  std::vector<EventRecord> events;
  std::vector<TransitLink> transit;
  std::vector<DistanceRecord> distances;
};

struct SandboxCounts {
  size_t cities = 0, flights = 0, restaurants = 0, attractions = 0, accommodations = 0,
         events = 0, transit = 0, distances = 0;
};

// Immutable once constructed; shared read-only across evaluation workers.
class Sandbox {
 public:
  // throws MissingFile / SchemaError (with file:line:column) / DanglingReference
  static Sandbox load(const std::filesystem::path& root);

  // validates cross-references and duplicates, then builds the indexes
  explicit Sandbox(SandboxData data);
  Sandbox(Sandbox&&) = delete;  // indexes hold pointers into the collections
  Sandbox& operator=(Sandbox&&) = delete;

  const std::vector<City>& cities() const { return data_.cities; }
  const std::vector<Flight>& flights() const { return data_.flights; }
  const std::vector<Restaurant>& restaurants() const { return data_.restaurants; }
  const std::vector<Attraction>& attractions() const { return data_.attractions; }
  const std::vector<Accommodation>& accommodations() const { return data_.accommodations; }
  const std::vector<EventRecord>& events() const { return data_.events; }
  const std::vector<TransitLink>& transit() const { return data_.transit; }
  const std::vector<DistanceRecord>& distances() const { return data_.distances; }
  SandboxCounts counts() const;

  bool has_city(std::string_view name) const;
  const City* find_city(std::string_view name) const;

  // nullopt when no PoI of that name exists in the city; throws AmbiguousNameError
  // when the name appears in more than one collection for that city
  std::optional<PoIRecord> find_poi(std::string_view name, std::string_view city) const;
  // as find_poi but NotFoundError instead of nullopt
  PoIRecord lookup_poi(std::string_view name, std::string_view city) const;
  // cities (original spelling) that contain a PoI with this name
  std::vector<std::string> cities_with_poi(std::string_view name) const;

  // kind-filtered variants: a name shared across collections is not ambiguous
  // when the caller already knows what kind of place it expects
  std::optional<PoIRecord> find_poi_of(PoiKind kind, std::string_view name,
                                       std::string_view city) const;
  std::vector<std::string> cities_with_poi_of(PoiKind kind, std::string_view name) const;

  // NotFoundError when no such PoI; NoTransitDataError when the PoI has no link
  const TransitLink& transit_for(std::string_view poi_name, std::string_view city) const;
  const TransitLink* find_transit(std::string_view poi_name, std::string_view city) const;

  std::vector<const Flight*> flights_by_number(std::string_view number) const;
  const Flight* find_flight(std::string_view number, std::string_view date) const;

  const EventRecord* find_event(std::string_view name, std::string_view city) const;

 private:
  void validate_and_index();

  SandboxData data_;
  std::unordered_map<std::string, size_t> city_index_;
  std::unordered_map<std::string, std::vector<PoIRecord>> poi_index_;       // city \x1f name
  std::unordered_map<std::string, std::vector<std::string>> poi_cities_;   // name -> cities
  std::unordered_map<std::string, size_t> transit_index_;                  // city \x1f name
  std::unordered_map<std::string, std::vector<size_t>> flight_index_;      // number
  std::unordered_map<std::string, size_t> flight_date_index_;              // number \x1f date
  std::unordered_map<std::string, std::vector<size_t>> event_index_;       // city \x1f name
};

}  // namespace tripgrade
