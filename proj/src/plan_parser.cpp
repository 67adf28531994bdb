#include "tripgrade/plan_parser.hpp"

#include <cstdlib>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "tripgrade/errors.hpp"
#include "tripgrade/text.hpp"
#include "tripgrade/timeutil.hpp"

namespace tripgrade {

namespace {

int parse_time_or_throw(const std::string& token, int line) {
  auto t = parse_time_minutes(trim(token));
  if (!t) throw ParseError(line, "a time 'HH:MM'", token);
  return *t;
}

// nonnegative decimal number, full-token match
double parse_distance(const std::string& token, int line) {
  std::string t = trim(token);
  if (t.empty()) throw ParseError(line, "a distance in meters", token);
  char* end = nullptr;
  double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || v < 0.0 || t[0] == '-' || t[0] == '+')
    throw ParseError(line, "a nonnegative distance in meters", token);
  return v;
}

size_t ifind(std::string_view hay, std::string_view needle, size_t from = 0) {
  if (needle.empty() || hay.size() < needle.size()) return std::string_view::npos;
  for (size_t i = from; i + needle.size() <= hay.size(); ++i)
    if (iequals(hay.substr(i, needle.size()), needle)) return i;
  return std::string_view::npos;
}

PoIVisit parse_poi_entry(const std::string& raw_entry, int line) {
  std::string entry = trim(raw_entry);
  while (!entry.empty() && (entry.back() == '.' || entry.back() == ' ')) entry.pop_back();

  static const std::string kStay = ", stay from ";
  static const std::string kVisit = ", visit from ";
  size_t stay_pos = ifind(entry, kStay);
  size_t visit_pos = ifind(entry, kVisit);
  size_t pos;
  VisitVerb verb;
  if (stay_pos != std::string::npos && (visit_pos == std::string::npos || stay_pos < visit_pos)) {
    pos = stay_pos;
    verb = VisitVerb::stay;
  } else if (visit_pos != std::string::npos) {
    pos = visit_pos;
    verb = VisitVerb::visit;
  } else {
    throw ParseError(line, "', stay from ' or ', visit from '", entry);
  }

  PoIVisit visit;
  visit.verb = verb;
  visit.kind = verb == VisitVerb::stay ? PoiKind::accommodation : PoiKind::attraction;
  visit.name = trim(entry.substr(0, pos));
  if (visit.name.empty()) throw ParseError(line, "a PoI name before the time window", entry);

  std::string rest = entry.substr(pos + (verb == VisitVerb::stay ? kStay : kVisit).size());
  size_t to_pos = ifind(rest, " to ");
  if (to_pos == std::string::npos) throw ParseError(line, "' to ' between window times", rest);
  int start = parse_time_or_throw(rest.substr(0, to_pos), line);
  rest = rest.substr(to_pos + 4);

  static const std::string kTransit = ", nearest transit: ";
  size_t tr_pos = ifind(rest, kTransit);
  if (tr_pos == std::string::npos) throw ParseError(line, "', nearest transit: '", rest);
  int end = parse_time_or_throw(rest.substr(0, tr_pos), line);
  std::string tail = rest.substr(tr_pos + kTransit.size());

  static const std::string kAway = "m away";
  if (!(tail.size() > kAway.size() &&
        iequals(std::string_view(tail).substr(tail.size() - kAway.size()), kAway)))
    throw ParseError(line, "'<distance>m away'", tail);
  std::string before_away = tail.substr(0, tail.size() - kAway.size());
  size_t comma = before_away.rfind(", ");
  if (comma == std::string::npos)
    throw ParseError(line, "', <distance>m away' after the stop name", tail);
  visit.transit_stop = trim(before_away.substr(0, comma));
  visit.transit_distance_m = parse_distance(before_away.substr(comma + 2), line);
  if (visit.transit_stop.empty()) throw ParseError(line, "a transit stop name", tail);

  if (end == start) throw ParseError(line, "a window with nonzero length", entry);
  if (end < start) {
    if (verb == VisitVerb::visit)
      throw ParseError(line, "a visit window that ends after it starts", entry);
    visit.window.wraps_midnight = true;  // overnight stay
  }
  visit.window.start_min = start;
  visit.window.end_min = end;
  return visit;
}

std::vector<PoIVisit> parse_poi_list(const std::string& value, int line) {
  std::vector<PoIVisit> visits;
  std::string v = trim(value);
  if (v.empty() || v == "-") return visits;
  for (const auto& piece : split(v, ';')) {
    std::string p = trim(piece);
    if (p.empty() || p == ".") continue;  // trailing separator / period
    visits.push_back(parse_poi_entry(p, line));
  }
  return visits;
}

Transportation parse_transportation(const std::string& value, int line) {
  Transportation t;
  std::string v = trim(value);
  if (v.empty() || v == "-") return t;
  if (!istarts_with(v, "flight number:")) {
    t.mode = Transportation::Mode::other;
    t.text = v;
    return t;
  }
  t.mode = Transportation::Mode::flight;
  FlightLeg leg;
  std::string rest = trim(v.substr(std::string("flight number:").size()));
  size_t comma = rest.find(',');
  if (comma == std::string::npos) throw ParseError(line, "',' after the flight number", rest);
  leg.flight_number = trim(rest.substr(0, comma));
  if (leg.flight_number.empty()) throw ParseError(line, "a flight number", v);
  rest = trim(rest.substr(comma + 1));

  if (!istarts_with(rest, "from ")) throw ParseError(line, "'from <origin> to <dest>'", rest);
  rest = rest.substr(5);
  size_t to_pos = ifind(rest, " to ");
  if (to_pos == std::string::npos) throw ParseError(line, "' to ' between flight cities", rest);
  leg.origin = trim(rest.substr(0, to_pos));
  rest = rest.substr(to_pos + 4);
  comma = rest.find(',');
  if (comma == std::string::npos) throw ParseError(line, "',' after the destination city", rest);
  leg.dest = trim(rest.substr(0, comma));
  rest = trim(rest.substr(comma + 1));

  if (!istarts_with(rest, "departure time:"))
    throw ParseError(line, "'Departure Time: <HH:MM>'", rest);
  rest = trim(rest.substr(std::string("departure time:").size()));
  comma = rest.find(',');
  if (comma == std::string::npos) throw ParseError(line, "',' after the departure time", rest);
  leg.departure_min = parse_time_or_throw(rest.substr(0, comma), line);
  rest = trim(rest.substr(comma + 1));

  if (!istarts_with(rest, "arrival time:")) throw ParseError(line, "'Arrival Time: <HH:MM>'", rest);
  leg.arrival_min = parse_time_or_throw(trim(rest.substr(std::string("arrival time:").size())), line);

  if (leg.origin.empty() || leg.dest.empty()) throw ParseError(line, "flight cities", v);
  t.flight = leg;
  return t;
}

void parse_current_city(const std::string& value, int line, DayRecord& day) {
  std::string v = trim(value);
  if (v.empty() || v == "-") throw ParseError(line, "a city or 'from A to B'", value);
  if (istarts_with(v, "from ")) {
    std::string rest = v.substr(5);
    size_t to_pos = ifind(rest, " to ");
    if (to_pos == std::string::npos) throw ParseError(line, "'from <city> to <city>'", v);
    day.city_from = trim(rest.substr(0, to_pos));
    day.city_to = trim(rest.substr(to_pos + 4));
    if (day.city_from.empty() || day.city_to.empty())
      throw ParseError(line, "'from <city> to <city>'", v);
  } else {
    day.city_from = v;
    day.city_to = v;
  }
}

std::optional<PlaceRef> parse_place_field(const std::string& value) {
  std::string v = trim(value);
  if (v.empty() || v == "-") return std::nullopt;
  return PlaceRef::from_text(v);
}

std::vector<PlaceRef> parse_attraction_field(const std::string& value) {
  std::vector<PlaceRef> out;
  std::string v = trim(value);
  if (v.empty() || v == "-") return out;
  for (const auto& piece : split(v, ';')) {
    std::string p = trim(piece);
    if (!p.empty() && p != ".") out.push_back(PlaceRef::from_text(p));
  }
  return out;
}

// stays are accommodations; visits matching a meal field are restaurants
void classify_visits(DayRecord& day) {
  std::unordered_set<std::string> meal_names;
  for (MealKind m : kMealKinds) {
    if (const auto& ref = day.meal(m)) {
      meal_names.insert(norm_name(ref->name));
      meal_names.insert(norm_name(ref->raw));
    }
  }
  for (auto& visit : day.poi_list) {
    if (visit.verb == VisitVerb::stay) {
      visit.kind = PoiKind::accommodation;
    } else {
      visit.kind = meal_names.count(norm_name(visit.name)) ? PoiKind::restaurant
                                                           : PoiKind::attraction;
    }
  }
}

struct Line {
  std::string text;
  int number;
};

std::vector<Line> split_lines(const std::string& text) {
  std::vector<Line> lines;
  std::string cur;
  int number = 1;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back({cur, number++});
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) lines.push_back({cur, number});
  return lines;
}

std::optional<int> match_day_header(const std::string& line) {
  std::string t = trim(line);
  if (!istarts_with(t, "day ")) return std::nullopt;
  size_t i = 4, start = i;
  while (i < t.size() && t[i] >= '0' && t[i] <= '9') ++i;
  if (i == start || i >= t.size() || t[i] != ':' || trim(t.substr(i + 1)) != "")
    return std::nullopt;
  return std::stoi(t.substr(start, i - start));
}

// label must be followed by ':'; returns the value after it
std::optional<std::string> match_field(const std::string& line, std::string_view label) {
  std::string t = trim(line);
  if (!istarts_with(t, label)) return std::nullopt;
  std::string after = t.substr(label.size());
  if (after.empty() || after[0] != ':') return std::nullopt;
  return trim(after.substr(1));
}

constexpr std::string_view kFieldLabels[] = {
    "Current City", "Transportation", "Breakfast", "Attraction", "Lunch",
    "Dinner",       "Accommodation",  "Event",     "Point of Interest List",
};

bool is_any_field(const std::string& line) {
  for (auto label : kFieldLabels)
    if (match_field(line, label)) return true;
  return false;
}

void check_day_count(const ItineraryPlan& plan, const PlanFormatOptions& opts) {
  size_t n = plan.days.size();
  if (n == 0) throw ParseError(0, "at least one day block", "none");
  if (opts.benchmark_day_counts && n != 3 && n != 5 && n != 7)
    throw ParseError(0, "a plan of 3, 5 or 7 days", std::to_string(n) + " days");
}

}  // namespace

ItineraryPlan parse_plan(const std::string& text, const PlanFormatOptions& opts) {
  auto lines = split_lines(text);
  size_t i = 0;

  // tolerate only blank lines and a "Travel Plan:" banner before Day 1
  while (i < lines.size()) {
    std::string t = trim(lines[i].text);
    if (t.empty() || iequals(t, "travel plan:") || iequals(t, "travel plan")) {
      ++i;
      continue;
    }
    break;
  }
  if (i >= lines.size()) throw ParseError(lines.empty() ? 1 : lines.back().number, "'Day <n>:'", "end of input");
  if (!match_day_header(lines[i].text))
    throw ParseError(lines[i].number, "'Day <n>:'", trim(lines[i].text));

  ItineraryPlan plan;
  int prev_index = 0;

  while (i < lines.size()) {
    auto day_no = match_day_header(lines[i].text);
    if (!day_no) throw ParseError(lines[i].number, "'Day <n>:'", trim(lines[i].text));
    if (*day_no <= prev_index)
      throw ParseError(lines[i].number, "a day index greater than " + std::to_string(prev_index),
                       "Day " + std::to_string(*day_no));
    prev_index = *day_no;

    DayRecord day;
    day.day_index = *day_no;
    int header_line = lines[i].number;
    ++i;

    std::unordered_set<std::string> seen;
    bool got_poi_list = false, got_city = false, got_transport = false;

    while (i < lines.size() && !match_day_header(lines[i].text)) {
      std::string t = trim(lines[i].text);
      int line_no = lines[i].number;
      if (t.empty()) {
        ++i;
        continue;
      }
      bool matched = false;
      for (auto label : kFieldLabels) {
        auto value = match_field(lines[i].text, label);
        if (!value) continue;
        matched = true;
        std::string key = to_lower(std::string(label));
        if (!seen.insert(key).second)
          throw ParseError(line_no, "each field once per day", "duplicate '" + std::string(label) + "'");
        if (label == "Current City") {
          parse_current_city(*value, line_no, day);
          got_city = true;
        } else if (label == "Transportation") {
          day.transportation = parse_transportation(*value, line_no);
          got_transport = true;
        } else if (label == "Breakfast") {
          day.breakfast = parse_place_field(*value);
        } else if (label == "Lunch") {
          day.lunch = parse_place_field(*value);
        } else if (label == "Dinner") {
          day.dinner = parse_place_field(*value);
        } else if (label == "Attraction") {
          day.attractions = parse_attraction_field(*value);
        } else if (label == "Accommodation") {
          day.accommodation = parse_place_field(*value);
        } else if (label == "Event") {
          day.event = parse_place_field(*value);
        } else {  // Point of Interest List; entries may continue on following lines
          std::string value_text = *value;
          ++i;
          while (i < lines.size()) {
            std::string cont = trim(lines[i].text);
            if (cont.empty() || match_day_header(lines[i].text) || is_any_field(lines[i].text))
              break;
            value_text += " " + cont;
            ++i;
          }
          --i;  // loop increment below
          day.poi_list = parse_poi_list(value_text, line_no);
          got_poi_list = true;
        }
        break;
      }
      if (!matched) throw ParseError(line_no, "a day field label", t);
      ++i;
    }

    if (!got_city) throw ParseError(header_line, "field 'Current City' in the day block", "none");
    if (!got_transport)
      throw ParseError(header_line, "field 'Transportation' in the day block", "none");
    for (auto required : {"Breakfast", "Attraction", "Lunch", "Dinner", "Accommodation", "Event"})
      if (!seen.count(to_lower(required)))
        throw ParseError(header_line, "field '" + std::string(required) + "' in the day block",
                         "none");
    if (!got_poi_list)
      throw ParseError(header_line, "field 'Point of Interest List' in the day block", "none");

    classify_visits(day);
    plan.days.push_back(std::move(day));
  }

  check_day_count(plan, opts);
  return plan;
}

ItineraryPlan parse_plan_json(const std::string& json_text, const PlanFormatOptions& opts) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, "a valid JSON document", e.what());
  }
  if (doc.is_object() && doc.contains("plan")) doc = doc["plan"];
  if (!doc.is_array()) throw ParseError(0, "a JSON array of day objects", doc.type_name());

  auto str_key = [](const nlohmann::json& obj, const char* key) -> std::string {
    if (!obj.contains(key))
      throw ParseError(0, std::string("key '") + key + "'", "a day object without it");
    const auto& v = obj.at(key);
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "-";
    throw ParseError(0, std::string("a string for key '") + key + "'", v.type_name());
  };

  ItineraryPlan plan;
  int prev_index = 0;
  for (const auto& obj : doc) {
    if (!obj.is_object()) throw ParseError(0, "a day object", obj.type_name());
    if (!obj.contains("days")) throw ParseError(0, "key 'days'", "a day object without it");
    DayRecord day;
    const auto& days_v = obj.at("days");
    if (days_v.is_number_integer()) {
      day.day_index = days_v.get<int>();
    } else if (days_v.is_string()) {
      try {
        day.day_index = std::stoi(days_v.get<std::string>());
      } catch (...) {
        throw ParseError(0, "an integer for key 'days'", days_v.get<std::string>());
      }
    } else {
      throw ParseError(0, "an integer for key 'days'", days_v.type_name());
    }
    if (day.day_index <= prev_index)
      throw ParseError(0, "day indices strictly increasing",
                       "days = " + std::to_string(day.day_index));
    prev_index = day.day_index;

    parse_current_city(str_key(obj, "current_city"), 0, day);
    day.transportation = parse_transportation(str_key(obj, "transportation"), 0);
    day.breakfast = parse_place_field(str_key(obj, "breakfast"));
    day.attractions = parse_attraction_field(str_key(obj, "attraction"));
    day.lunch = parse_place_field(str_key(obj, "lunch"));
    day.dinner = parse_place_field(str_key(obj, "dinner"));
    day.accommodation = parse_place_field(str_key(obj, "accommodation"));
    day.event = parse_place_field(str_key(obj, "event"));
    day.poi_list = parse_poi_list(str_key(obj, "point_of_interest_list"), 0);
    classify_visits(day);
    plan.days.push_back(std::move(day));
  }

  check_day_count(plan, opts);
  return plan;
}

std::string serialize_poi_visit(const PoIVisit& v) {
  std::string out = v.name;
  out += v.verb == VisitVerb::stay ? ", stay from " : ", visit from ";
  out += format_time_minutes(v.window.start_min);
  out += " to ";
  out += format_time_minutes(v.window.end_min);
  out += ", nearest transit: ";
  out += v.transit_stop;
  out += ", ";
  out += format_compact(v.transit_distance_m);
  out += "m away";
  return out;
}

std::string serialize_plan(const ItineraryPlan& plan) {
  std::string out;
  auto place = [](const std::optional<PlaceRef>& ref) {
    return ref ? ref->raw : std::string("-");
  };
  for (size_t d = 0; d < plan.days.size(); ++d) {
    const DayRecord& day = plan.days[d];
    if (d) out += "\n";
    out += "Day " + std::to_string(day.day_index) + ":\n";
    out += "Current City: ";
    out += day.is_transition() ? "from " + day.city_from + " to " + day.city_to : day.city_from;
    out += "\n";
    out += "Transportation: ";
    switch (day.transportation.mode) {
      case Transportation::Mode::none:
        out += "-";
        break;
      case Transportation::Mode::flight: {
        const FlightLeg& f = *day.transportation.flight;
        out += "Flight Number: " + f.flight_number + ", from " + f.origin + " to " + f.dest +
               ", Departure Time: " + format_time_minutes(f.departure_min) +
               ", Arrival Time: " + format_time_minutes(f.arrival_min);
        break;
      }
      case Transportation::Mode::other:
        out += day.transportation.text;
        break;
    }
    out += "\n";
    out += "Breakfast: " + place(day.breakfast) + "\n";
    out += "Attraction: ";
    if (day.attractions.empty()) {
      out += "-";
    } else {
      for (size_t i = 0; i < day.attractions.size(); ++i) {
        if (i) out += "; ";
        out += day.attractions[i].raw;
      }
    }
    out += "\n";
    out += "Lunch: " + place(day.lunch) + "\n";
    out += "Dinner: " + place(day.dinner) + "\n";
    out += "Accommodation: " + place(day.accommodation) + "\n";
    out += "Event: " + place(day.event) + "\n";
    out += "Point of Interest List: ";
    if (day.poi_list.empty()) {
      out += "-";
    } else {
      for (size_t i = 0; i < day.poi_list.size(); ++i) {
        if (i) out += "; ";
        out += serialize_poi_visit(day.poi_list[i]);
      }
      out += ".";
    }
    out += "\n";
  }
  return out;
}

}  // namespace tripgrade
