#include "tripgrade/sandbox.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

#include "tripgrade/csv.hpp"
#include "tripgrade/errors.hpp"
#include "tripgrade/text.hpp"
#include "tripgrade/timeutil.hpp"

namespace tripgrade {

namespace {

constexpr char kSep = '\x1f';

std::string poi_key(std::string_view city, std::string_view name) {
  return norm_name(city) + kSep + norm_name(name);
}

struct RowReader {
  const std::string& file;
  const CsvTable& table;
  std::unordered_map<std::string, size_t> columns;

  RowReader(const std::string& file_, const CsvTable& table_,
            const std::vector<std::string>& required, const std::vector<std::string>& optional)
      : file(file_), table(table_) {
    for (size_t i = 0; i < table.header.size(); ++i) columns[norm_name(table.header[i])] = i;
    for (const auto& col : required)
      if (!columns.count(norm_name(col)))
        throw SchemaError(file, 1, 1, "missing column '" + col + "'");
    size_t known = required.size();
    for (const auto& col : optional)
      if (columns.count(norm_name(col))) ++known;
    if (columns.size() != known) throw SchemaError(file, 1, 1, "unexpected extra column");
  }

  bool has(const std::string& col) const { return columns.count(norm_name(col)) != 0; }

  std::string get(size_t row, const std::string& col) const {
    size_t idx = columns.at(norm_name(col));
    const auto& r = table.rows[row];
    if (idx >= r.size())
      throw SchemaError(file, table.row_lines[row], static_cast<int>(idx) + 1,
                        "row has too few fields (wanted '" + col + "')");
    return trim(r[idx]);
  }

  std::string get_nonempty(size_t row, const std::string& col) const {
    std::string v = get(row, col);
    if (v.empty())
      throw SchemaError(file, table.row_lines[row], column_of(col), "empty '" + col + "'");
    return v;
  }

  double get_double(size_t row, const std::string& col, double min_allowed = 0.0) const {
    std::string v = get_nonempty(row, col);
    char* end = nullptr;
    double d = std::strtod(v.c_str(), &end);
    if (end != v.c_str() + v.size() || !std::isfinite(d))
      throw SchemaError(file, table.row_lines[row], column_of(col),
                        "'" + col + "' is not a number: " + v);
    if (d < min_allowed)
      throw SchemaError(file, table.row_lines[row], column_of(col),
                        "'" + col + "' out of range: " + v);
    return d;
  }

  int get_time(size_t row, const std::string& col) const {
    std::string v = get_nonempty(row, col);
    auto t = parse_time_minutes(v);
    if (!t)
      throw SchemaError(file, table.row_lines[row], column_of(col),
                        "'" + col + "' is not a HH:MM time: " + v);
    return *t;
  }

  std::string get_date(size_t row, const std::string& col) const {
    std::string v = get_nonempty(row, col);
    if (!is_iso_date(v))
      throw SchemaError(file, table.row_lines[row], column_of(col),
                        "'" + col + "' is not an ISO date: " + v);
    return v;
  }

  int column_of(const std::string& col) const {
    return static_cast<int>(columns.at(norm_name(col))) + 1;
  }

  int line_of(size_t row) const { return table.row_lines[row]; }
  size_t size() const { return table.rows.size(); }
};

std::vector<std::string> split_pipe_list(const std::string& value) {
  std::vector<std::string> out;
  for (const auto& p : split_trimmed(value, '|'))
    if (!p.empty()) out.push_back(p);
  return out;
}

}  // namespace

const std::string& PoIRecord::name() const {
  switch (kind) {
    case PoiKind::restaurant: return restaurant->name;
    case PoiKind::attraction: return attraction->name;
    default: return accommodation->name;
  }
}

const std::string& PoIRecord::city() const {
  switch (kind) {
    case PoiKind::restaurant: return restaurant->city;
    case PoiKind::attraction: return attraction->city;
    default: return accommodation->city;
  }
}

Sandbox::Sandbox(SandboxData data) : data_(std::move(data)) { validate_and_index(); }

Sandbox Sandbox::load(const std::filesystem::path& root) {
  SandboxData data;

  {
    auto t = read_csv_file(root / "cities.csv");
    RowReader r("cities.csv", t, {"name", "state"}, {});
    for (size_t i = 0; i < r.size(); ++i)
      data.cities.push_back({r.get_nonempty(i, "name"), r.get_nonempty(i, "state")});
  }
  {
    auto t = read_csv_file(root / "flights.csv");
    RowReader r("flights.csv", t,
                {"flight_number", "origin", "dest", "date", "departure", "arrival", "price"}, {});
    for (size_t i = 0; i < r.size(); ++i) {
      Flight f;
      f.flight_number = r.get_nonempty(i, "flight_number");
      f.origin = r.get_nonempty(i, "origin");
      f.dest = r.get_nonempty(i, "dest");
      f.date = r.get_date(i, "date");
      f.departure_min = r.get_time(i, "departure");
      f.arrival_min = r.get_time(i, "arrival");
      f.price = r.get_double(i, "price");
      if (norm_name(f.origin) == norm_name(f.dest))
        throw SchemaError("flights.csv", r.line_of(i), r.column_of("dest"),
                          "flight origin equals destination");
      data.flights.push_back(std::move(f));
    }
  }
  {
    auto t = read_csv_file(root / "restaurants.csv");
    RowReader r("restaurants.csv", t, {"name", "city", "cuisines", "avg_cost"}, {});
    for (size_t i = 0; i < r.size(); ++i) {
      Restaurant rec;
      rec.name = r.get_nonempty(i, "name");
      rec.city = r.get_nonempty(i, "city");
      auto cuisines = split_pipe_list(r.get_nonempty(i, "cuisines"));
      if (cuisines.empty())
        throw SchemaError("restaurants.csv", r.line_of(i), r.column_of("cuisines"),
                          "empty cuisine list");
      for (const auto& c : cuisines) {
        auto canon = canonical_cuisine(c);
        if (!canon)
          throw SchemaError("restaurants.csv", r.line_of(i), r.column_of("cuisines"),
                            "unknown cuisine: " + c);
        rec.cuisines.push_back(*canon);
      }
      rec.avg_cost = r.get_double(i, "avg_cost");
      data.restaurants.push_back(std::move(rec));
    }
  }
  {
    auto t = read_csv_file(root / "attractions.csv");
    RowReader r("attractions.csv", t, {"name", "city", "categories"}, {"visit_duration"});
    for (size_t i = 0; i < r.size(); ++i) {
      Attraction rec;
      rec.name = r.get_nonempty(i, "name");
      rec.city = r.get_nonempty(i, "city");
      auto cats = split_pipe_list(r.get_nonempty(i, "categories"));
      if (cats.empty())
        throw SchemaError("attractions.csv", r.line_of(i), r.column_of("categories"),
                          "empty category list");
      double sum = 0;
      for (const auto& c : cats) {
        auto canon = canonical_category(c);
        if (!canon)
          throw SchemaError("attractions.csv", r.line_of(i), r.column_of("categories"),
                            "unknown category: " + c);
        rec.categories.push_back(*canon);
        sum += *category_hours(*canon);
      }
      std::string dur = r.has("visit_duration") ? r.get(i, "visit_duration") : std::string();
      rec.visit_duration_h =
          dur.empty() ? sum / static_cast<double>(cats.size()) : r.get_double(i, "visit_duration");
      data.attractions.push_back(std::move(rec));
    }
  }
  {
    auto t = read_csv_file(root / "accommodations.csv");
    RowReader r("accommodations.csv", t, {"name", "city", "room_type", "house_rules", "price_per_night"},
                {"max_occupancy"});
    for (size_t i = 0; i < r.size(); ++i) {
      Accommodation rec;
      rec.name = r.get_nonempty(i, "name");
      rec.city = r.get_nonempty(i, "city");
      auto type = parse_room_type(r.get_nonempty(i, "room_type"));
      if (!type)
        throw SchemaError("accommodations.csv", r.line_of(i), r.column_of("room_type"),
                          "unknown room type: " + r.get(i, "room_type"));
      rec.room_type = *type;
      for (const auto& rule : split_pipe_list(r.get(i, "house_rules"))) {
        bool known = false;
        for (const auto& canon : house_rule_vocabulary())
          if (iequals(rule, canon)) {
            rec.house_rules.push_back(canon);
            known = true;
            break;
          }
        if (!known)
          throw SchemaError("accommodations.csv", r.line_of(i), r.column_of("house_rules"),
                            "unknown house rule: " + rule);
      }
      rec.price_per_night = r.get_double(i, "price_per_night");
      if (r.has("max_occupancy")) {
        std::string occ = r.get(i, "max_occupancy");
        if (!occ.empty()) {
          double v = r.get_double(i, "max_occupancy", 1.0);
          if (v != std::floor(v))
            throw SchemaError("accommodations.csv", r.line_of(i), r.column_of("max_occupancy"),
                              "max_occupancy must be an integer");
          rec.max_occupancy = static_cast<int>(v);
        }
      }
      data.accommodations.push_back(std::move(rec));
    }
  }
  {
    auto t = read_csv_file(root / "events.csv");
    RowReader r("events.csv", t, {"name", "city", "date", "event_type"}, {});
    for (size_t i = 0; i < r.size(); ++i) {
      EventRecord rec;
      rec.name = r.get_nonempty(i, "name");
      rec.city = r.get_nonempty(i, "city");
      rec.date = r.get_date(i, "date");
      auto type = parse_event_type(r.get_nonempty(i, "event_type"));
      if (!type)
        throw SchemaError("events.csv", r.line_of(i), r.column_of("event_type"),
                          "unknown event type: " + r.get(i, "event_type"));
      rec.type = *type;
      data.events.push_back(std::move(rec));
    }
  }
  {
    auto t = read_csv_file(root / "transit.csv");
    RowReader r("transit.csv", t, {"poi_name", "city", "stop_name", "distance_m"}, {});
    for (size_t i = 0; i < r.size(); ++i)
      data.transit.push_back({r.get_nonempty(i, "poi_name"), r.get_nonempty(i, "city"),
                              r.get_nonempty(i, "stop_name"), r.get_double(i, "distance_m")});
  }
  {
    auto t = read_csv_file(root / "distances.csv");
    RowReader r("distances.csv", t, {"from", "to", "city", "distance_m", "travel_time_min"}, {});
    for (size_t i = 0; i < r.size(); ++i)
      data.distances.push_back({r.get_nonempty(i, "from"), r.get_nonempty(i, "to"),
                                r.get_nonempty(i, "city"), r.get_double(i, "distance_m"),
                                r.get_double(i, "travel_time_min")});
  }

  return Sandbox(std::move(data));
}

void Sandbox::validate_and_index() {
  if (data_.cities.empty()) throw SchemaError("cities.csv", 0, 0, "no cities");

  for (size_t i = 0; i < data_.cities.size(); ++i) {
    const auto& c = data_.cities[i];
    if (!city_index_.emplace(norm_name(c.name), i).second)
      throw SchemaError("cities.csv", 0, 0, "duplicate city: " + c.name);
  }

  auto require_city = [&](const std::string& city, const std::string& entity,
                          const char* what) {
    if (!city_index_.count(norm_name(city)))
      throw DanglingReferenceError(entity, city, std::string(what) + " '" + entity +
                                                     "' references unknown city '" + city + "'");
  };

  auto add_poi = [&](PoIRecord rec) {
    const std::string& name = rec.name();
    const std::string& city = rec.city();
    auto& bucket = poi_index_[poi_key(city, name)];
    for (const auto& existing : bucket)
      if (existing.kind == rec.kind)
        throw SchemaError(std::string(poi_kind_name(rec.kind)) + "s", 0, 0,
                          "duplicate PoI '" + name + "' in " + city);
    bucket.push_back(rec);
    auto& cities = poi_cities_[norm_name(name)];
    bool seen = false;
    for (const auto& c : cities)
      if (norm_name(c) == norm_name(city)) seen = true;
    if (!seen) cities.push_back(city);
  };

  for (const auto& r : data_.restaurants) {
    require_city(r.city, r.name, "restaurant");
    if (r.avg_cost < 0) throw SchemaError("restaurants.csv", 0, 0, "negative cost: " + r.name);
    add_poi({PoiKind::restaurant, &r, nullptr, nullptr});
  }
  for (const auto& a : data_.attractions) {
    require_city(a.city, a.name, "attraction");
    add_poi({PoiKind::attraction, nullptr, &a, nullptr});
  }
  for (const auto& a : data_.accommodations) {
    require_city(a.city, a.name, "accommodation");
    add_poi({PoiKind::accommodation, nullptr, nullptr, &a});
  }

  for (const auto& e : data_.events) require_city(e.city, e.name, "event");
  for (size_t i = 0; i < data_.events.size(); ++i)
    event_index_[poi_key(data_.events[i].city, data_.events[i].name)].push_back(i);

  for (const auto& f : data_.flights) {
    require_city(f.origin, f.flight_number, "flight");
    require_city(f.dest, f.flight_number, "flight");
  }
  for (size_t i = 0; i < data_.flights.size(); ++i) {
    const auto& f = data_.flights[i];
    flight_index_[norm_name(f.flight_number)].push_back(i);
    if (!flight_date_index_.emplace(norm_name(f.flight_number) + kSep + f.date, i).second)
      throw SchemaError("flights.csv", 0, 0,
                        "duplicate flight " + f.flight_number + " on " + f.date);
  }

  for (size_t i = 0; i < data_.transit.size(); ++i) {
    const auto& link = data_.transit[i];
    auto it = poi_index_.find(poi_key(link.city, link.poi_name));
    if (it == poi_index_.end())
      throw DanglingReferenceError(link.poi_name, link.city,
                                   "transit link for unknown PoI '" + link.poi_name + "' in '" +
                                       link.city + "'");
    if (it->second.size() != 1)
      throw DanglingReferenceError(link.poi_name, link.city,
                                   "transit link for ambiguous PoI '" + link.poi_name + "' in '" +
                                       link.city + "'");
    if (!transit_index_.emplace(poi_key(link.city, link.poi_name), i).second)
      throw SchemaError("transit.csv", 0, 0,
                        "duplicate transit link for '" + link.poi_name + "' in " + link.city);
  }

  for (const auto& d : data_.distances) require_city(d.city, d.from_poi, "distance row");
}

SandboxCounts Sandbox::counts() const {
  return {data_.cities.size(),        data_.flights.size(),  data_.restaurants.size(),
          data_.attractions.size(),   data_.accommodations.size(), data_.events.size(),
          data_.transit.size(),       data_.distances.size()};
}

bool Sandbox::has_city(std::string_view name) const {
  return city_index_.count(norm_name(name)) != 0;
}

const City* Sandbox::find_city(std::string_view name) const {
  auto it = city_index_.find(norm_name(name));
  return it == city_index_.end() ? nullptr : &data_.cities[it->second];
}

std::optional<PoIRecord> Sandbox::find_poi(std::string_view name, std::string_view city) const {
  auto it = poi_index_.find(poi_key(city, name));
  if (it == poi_index_.end()) return std::nullopt;
  if (it->second.size() > 1)
    throw AmbiguousNameError("'" + std::string(name) + "' names more than one PoI in " +
                             std::string(city));
  return it->second.front();
}

PoIRecord Sandbox::lookup_poi(std::string_view name, std::string_view city) const {
  auto rec = find_poi(name, city);
  if (!rec)
    throw NotFoundError("no PoI '" + std::string(name) + "' in " + std::string(city));
  return *rec;
}

std::vector<std::string> Sandbox::cities_with_poi(std::string_view name) const {
  auto it = poi_cities_.find(norm_name(name));
  return it == poi_cities_.end() ? std::vector<std::string>{} : it->second;
}

std::optional<PoIRecord> Sandbox::find_poi_of(PoiKind kind, std::string_view name,
                                              std::string_view city) const {
  auto it = poi_index_.find(poi_key(city, name));
  if (it == poi_index_.end()) return std::nullopt;
  for (const auto& rec : it->second)
    if (rec.kind == kind) return rec;
  return std::nullopt;
}

std::vector<std::string> Sandbox::cities_with_poi_of(PoiKind kind, std::string_view name) const {
  std::vector<std::string> out;
  for (const auto& city : cities_with_poi(name))
    if (find_poi_of(kind, name, city)) out.push_back(city);
  return out;
}

const TransitLink* Sandbox::find_transit(std::string_view poi_name, std::string_view city) const {
  auto it = transit_index_.find(poi_key(city, poi_name));
  return it == transit_index_.end() ? nullptr : &data_.transit[it->second];
}

const TransitLink& Sandbox::transit_for(std::string_view poi_name, std::string_view city) const {
  if (!find_poi(poi_name, city))
    throw NotFoundError("no PoI '" + std::string(poi_name) + "' in " + std::string(city));
  const TransitLink* link = find_transit(poi_name, city);
  if (!link)
    throw NoTransitDataError("no transit data for '" + std::string(poi_name) + "' in " +
                             std::string(city));
  return *link;
}

std::vector<const Flight*> Sandbox::flights_by_number(std::string_view number) const {
  std::vector<const Flight*> out;
  auto it = flight_index_.find(norm_name(number));
  if (it != flight_index_.end())
    for (size_t idx : it->second) out.push_back(&data_.flights[idx]);
  return out;
}

const Flight* Sandbox::find_flight(std::string_view number, std::string_view date) const {
  auto it = flight_date_index_.find(norm_name(number) + kSep + std::string(date));
  return it == flight_date_index_.end() ? nullptr : &data_.flights[it->second];
}

const EventRecord* Sandbox::find_event(std::string_view name, std::string_view city) const {
  auto it = event_index_.find(poi_key(city, name));
  return it == event_index_.end() ? nullptr : &data_.events[it->second.front()];
}

}  // namespace tripgrade
