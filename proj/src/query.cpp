#include "tripgrade/query.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "tripgrade/errors.hpp"
#include "tripgrade/text.hpp"
#include "tripgrade/timeutil.hpp"

namespace tripgrade {

TravelerType Persona::traveler() const {
  auto t = parse_traveler_type(traveler_type);
  if (!t) throw UnknownTravelerTypeError("unknown traveler type: " + traveler_type);
  return *t;
}

std::vector<std::string> Persona::component_texts() const {
  return {traveler_type, purpose, spending, location};
}

namespace {

std::optional<std::string> opt_string(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  const auto& v = j.at(key);
  if (!v.is_string()) throw QueryError(std::string("'") + key + "' must be a string or null");
  std::string s = trim(v.get<std::string>());
  if (s.empty() || s == "-") return std::nullopt;
  return s;
}

std::set<std::string> opt_string_set(const nlohmann::json& j, const char* key) {
  std::set<std::string> out;
  if (!j.contains(key) || j.at(key).is_null()) return out;
  const auto& v = j.at(key);
  if (v.is_string()) {
    std::string s = trim(v.get<std::string>());
    if (!s.empty() && s != "-") out.insert(s);
    return out;
  }
  if (!v.is_array())
    throw QueryError(std::string("'") + key + "' must be a string, array or null");
  for (const auto& item : v) {
    if (!item.is_string()) throw QueryError(std::string("'") + key + "' entries must be strings");
    std::string s = trim(item.get<std::string>());
    if (!s.empty()) out.insert(s);
  }
  return out;
}

Query query_from_json_value(const nlohmann::json& j) {
  Query q;
  try {
    q.org = j.at("org").get<std::string>();
    q.dest = j.at("dest").get<std::string>();
    q.days = j.at("days").get<int>();
    q.visiting_city_number = j.at("visiting_city_number").get<int>();
    for (const auto& d : j.at("date")) q.dates.push_back(d.get<std::string>());
    q.people_number = j.at("people_number").get<int>();
    q.budget = j.at("budget").get<double>();
    if (j.contains("level") && j.at("level").is_string()) q.level = j.at("level").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw QueryError(std::string("bad query: ") + e.what());
  }

  if (q.days != 3 && q.days != 5 && q.days != 7)
    throw QueryError("query days must be 3, 5 or 7");
  if (q.visiting_city_number != visiting_cities_for_days(q.days))
    throw QueryError("visiting_city_number must be " +
                     std::to_string(visiting_cities_for_days(q.days)) + " for a " +
                     std::to_string(q.days) + "-day trip");
  if (static_cast<int>(q.dates.size()) != q.days)
    throw QueryError("query must list one date per day");
  for (const auto& d : q.dates)
    if (!is_iso_date(d)) throw QueryError("bad date in query: " + d);
  if (q.people_number < 1) throw QueryError("people_number must be at least 1");
  if (q.budget < 0) throw QueryError("budget must be nonnegative");

  if (j.contains("local_constraint") && !j.at("local_constraint").is_null()) {
    const auto& lc = j.at("local_constraint");
    if (!lc.is_object()) throw QueryError("'local_constraint' must be an object");
    if (auto rule = opt_string(lc, "house rule")) {
      auto canon = canonical_house_rule_request(*rule);
      if (!canon) throw QueryError("unknown house rule: " + *rule);
      q.local.house_rule = canon;
    }
    for (const auto& c : opt_string_set(lc, "cuisine")) {
      auto canon = canonical_cuisine(c);
      if (!canon) throw QueryError("unknown cuisine: " + c);
      q.local.cuisines.insert(*canon);
    }
    if (auto rt = opt_string(lc, "room type")) {
      std::string n = norm_name(*rt);
      if (n != "not shared room" && !parse_room_type(*rt))
        throw QueryError("unknown room type: " + *rt);
      q.local.room_type = n;
    }
    if (auto tr = opt_string(lc, "transportation")) {
      std::string n = norm_name(*tr);
      if (n != "no flight" && n != "no self-driving")
        throw QueryError("unknown transportation constraint: " + *tr);
      q.local.transportation = n;
    }
    for (const auto& e : opt_string_set(lc, "event")) {
      auto type = parse_event_type(e);
      if (!type) throw QueryError("unknown event type: " + e);
      q.local.event_types.insert(event_type_name(*type));
    }
    for (const auto& a : opt_string_set(lc, "attraction")) {
      auto canon = canonical_category(a);
      if (!canon) throw QueryError("unknown attraction category: " + a);
      q.local.attraction_types.insert(*canon);
    }
  }
  return q;
}

Persona persona_from_json(const nlohmann::json& j) {
  auto pick = [&](const char* snake, const char* title) -> std::string {
    if (j.contains(snake) && j.at(snake).is_string()) return j.at(snake).get<std::string>();
    if (j.contains(title) && j.at(title).is_string()) return j.at(title).get<std::string>();
    throw QueryError(std::string("persona missing '") + snake + "'");
  };
  Persona p;
  p.traveler_type = pick("traveler_type", "Traveler Type");
  p.purpose = pick("purpose", "Purpose of Travel");
  p.spending = pick("spending", "Spending Preference");
  p.location = pick("location", "Location Preference");
  if (!parse_traveler_type(p.traveler_type))
    throw UnknownTravelerTypeError("unknown traveler type: " + p.traveler_type);
  return p;
}

}  // namespace

Query query_from_json(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw QueryError(std::string("bad query JSON: ") + e.what());
  }
  return query_from_json_value(doc);
}

std::vector<QueryRecord> read_queries_jsonl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read queries file " + path);
  std::vector<QueryRecord> out;
  std::string line;
  int line_no = 0;
  std::set<std::string> ids;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty()) continue;
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(t);
    } catch (const nlohmann::json::exception& e) {
      throw QueryError("queries line " + std::to_string(line_no) + ": " + e.what());
    }
    QueryRecord rec;
    try {
      rec.id = doc.at("id").get<std::string>();
    } catch (const nlohmann::json::exception&) {
      throw QueryError("queries line " + std::to_string(line_no) + ": missing 'id'");
    }
    if (!ids.insert(rec.id).second)
      throw QueryError("duplicate query id: " + rec.id);
    if (!doc.contains("query"))
      throw QueryError("queries line " + std::to_string(line_no) + ": missing 'query'");
    try {
      rec.query = query_from_json_value(doc.at("query"));
      if (!doc.contains("persona"))
        throw QueryError("queries line " + std::to_string(line_no) + ": missing 'persona'");
      rec.persona = persona_from_json(doc.at("persona"));
    } catch (const Error& e) {
      throw QueryError("queries line " + std::to_string(line_no) + " (id " + rec.id +
                       "): " + e.what());
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::string query_record_to_json(const QueryRecord& record) {
  const Query& q = record.query;
  nlohmann::json lc = {{"house rule", nullptr},   {"cuisine", nullptr},
                       {"room type", nullptr},    {"transportation", nullptr},
                       {"event", nullptr},        {"attraction", nullptr}};
  if (q.local.house_rule) lc["house rule"] = *q.local.house_rule;
  if (!q.local.cuisines.empty()) lc["cuisine"] = q.local.cuisines;
  if (q.local.room_type) lc["room type"] = *q.local.room_type;
  if (q.local.transportation) lc["transportation"] = *q.local.transportation;
  if (!q.local.event_types.empty()) lc["event"] = q.local.event_types;
  if (!q.local.attraction_types.empty()) lc["attraction"] = q.local.attraction_types;

  nlohmann::json doc = {
      {"id", record.id},
      {"query",
       {{"org", q.org},
        {"dest", q.dest},
        {"days", q.days},
        {"visiting_city_number", q.visiting_city_number},
        {"date", q.dates},
        {"people_number", q.people_number},
        {"local_constraint", lc},
        {"budget", q.budget},
        {"level", q.level}}},
      {"persona",
       {{"traveler_type", record.persona.traveler_type},
        {"purpose", record.persona.purpose},
        {"spending", record.persona.spending},
        {"location", record.persona.location}}}};
  return doc.dump();
}

}  // namespace tripgrade
