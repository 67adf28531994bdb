#include "tripgrade/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "tripgrade/errors.hpp"
#include "tripgrade/text.hpp"
#include "tripgrade/timeutil.hpp"

namespace tripgrade {

const char* constraint_id_name(ConstraintId id) {
  switch (id) {
    case ConstraintId::within_sandbox: return "within_sandbox";
    case ConstraintId::complete_information: return "complete_information";
    case ConstraintId::sufficient_meal_gaps: return "sufficient_meal_gaps";
    case ConstraintId::valid_poi_list: return "valid_poi_list";
    case ConstraintId::diverse_events: return "diverse_events";
    case ConstraintId::diverse_restaurants: return "diverse_restaurants";
    case ConstraintId::diverse_attractions: return "diverse_attractions";
    case ConstraintId::within_current_city: return "within_current_city";
    case ConstraintId::reasonable_city_route: return "reasonable_city_route";
    case ConstraintId::non_conflicting_transportation: return "non_conflicting_transportation";
    case ConstraintId::budget: return "budget";
    case ConstraintId::room_rule: return "room_rule";
    case ConstraintId::room_type: return "room_type";
    case ConstraintId::cuisine: return "cuisine";
    case ConstraintId::transportation: return "transportation";
    case ConstraintId::event_types: return "event_types";
    case ConstraintId::attraction_types: return "attraction_types";
  }
  return "?";
}

const char* constraint_label(ConstraintId id) {
  switch (id) {
    case ConstraintId::within_sandbox: return "Within Sandbox";
    case ConstraintId::complete_information: return "Complete Information";
    case ConstraintId::sufficient_meal_gaps: return "Sufficient Meal Gaps";
    case ConstraintId::valid_poi_list: return "Valid PoI List";
    case ConstraintId::diverse_events: return "Diverse Events";
    case ConstraintId::diverse_restaurants: return "Diverse Restaurants";
    case ConstraintId::diverse_attractions: return "Diverse Attractions";
    case ConstraintId::within_current_city: return "Within Current City";
    case ConstraintId::reasonable_city_route: return "Reasonable City Route";
    case ConstraintId::non_conflicting_transportation: return "Non-conflicting Transportation";
    case ConstraintId::budget: return "Budget";
    case ConstraintId::room_rule: return "Room Rule";
    case ConstraintId::room_type: return "Room Type";
    case ConstraintId::cuisine: return "Cuisine";
    case ConstraintId::transportation: return "Transportation";
    case ConstraintId::event_types: return "Event Types";
    case ConstraintId::attraction_types: return "Attraction Types";
  }
  return "?";
}

bool ConstraintReport::commonsense_pass() const {
  for (const auto& r : commonsense)
    if (!r.passed) return false;
  return true;
}

bool ConstraintReport::hard_pass() const {
  for (const auto& r : hard)
    if (r.applicable && !r.passed) return false;
  return true;
}

const ConstraintResult* ConstraintReport::find(ConstraintId id) const {
  for (const auto& r : commonsense)
    if (r.id == id) return &r;
  for (const auto& r : hard)
    if (r.id == id) return &r;
  return nullptr;
}

namespace {

std::string time_str(int minutes) { return format_time_minutes(minutes % (24 * 60)); }

// accumulates failure reasons for one constraint; passes when none arrived
struct Verdict {
  ConstraintId id;
  std::vector<std::string> reasons;

  explicit Verdict(ConstraintId i) : id(i) {}
  void fail(std::string reason) { reasons.push_back(std::move(reason)); }
  ConstraintResult result() const {
    ConstraintResult r;
    r.id = id;
    r.passed = reasons.empty();
    if (!r.passed) {
      std::string joined;
      for (const auto& s : reasons) {
        if (!joined.empty()) joined += "; ";
        joined += s;
      }
      r.detail = joined;
    }
    return r;
  }
};

std::string day_tag(const ResolvedDay& rd) { return "day " + std::to_string(rd.day->day_index); }

bool names_match(const std::string& candidate, const PlaceRef& ref) {
  std::string n = norm_name(candidate);
  return n == norm_name(ref.name) || n == norm_name(ref.raw);
}

const ResolvedPlace* place_of(const std::optional<ResolvedPlace>& p) {
  return p ? &*p : nullptr;
}

// every named place/flight/event/city must exist in the sandbox
ConstraintResult check_within_sandbox(const ResolvedPlan& plan) {
  Verdict v(ConstraintId::within_sandbox);
  const Sandbox& sandbox = *plan.sandbox;
  auto check_place = [&](const ResolvedDay& rd, const ResolvedPlace* p, const char* what) {
    if (!p || p->found()) return;
    if (p->ambiguous)
      v.fail(day_tag(rd) + " " + what + " '" + p->ref->raw +
             "' matches several cities and names none");
    else
      v.fail(day_tag(rd) + " " + what + " '" + p->ref->raw + "' is not in the sandbox");
  };
  std::set<std::string> checked_cities;
  for (const auto& rd : plan.days) {
    for (const auto& city : {rd.day->city_from, rd.day->city_to}) {
      if (city.empty() || !checked_cities.insert(norm_name(city)).second) continue;
      if (!sandbox.has_city(city)) v.fail("unknown city '" + city + "'");
    }
    if (rd.flight && !rd.flight->record) v.fail(day_tag(rd) + ": " + rd.flight->mismatch);
    check_place(rd, place_of(rd.breakfast), "breakfast");
    check_place(rd, place_of(rd.lunch), "lunch");
    check_place(rd, place_of(rd.dinner), "dinner");
    for (const auto& a : rd.attractions) check_place(rd, &a, "attraction");
    check_place(rd, place_of(rd.accommodation), "accommodation");
    if (rd.event && !rd.event->found())
      v.fail(day_tag(rd) + " event '" + rd.event->ref->raw + "' is not in the sandbox");
    for (const auto& rv : rd.visits) {
      if (rv.found()) continue;
      if (rv.ambiguous)
        v.fail(day_tag(rd) + " PoI '" + rv.visit->name + "' matches several cities");
      else
        v.fail(day_tag(rd) + " PoI '" + rv.visit->name + "' is not in the sandbox");
    }
  }
  return v.result();
}

// lodging every night but the last, transportation on inter-city days, and a
// time window for every named meal
ConstraintResult check_complete_information(const ResolvedPlan& plan) {
  Verdict v(ConstraintId::complete_information);
  for (size_t i = 0; i < plan.days.size(); ++i) {
    const ResolvedDay& rd = plan.days[i];
    const DayRecord& day = *rd.day;
    bool final_day = i + 1 == plan.days.size();
    if (!final_day && !day.accommodation) v.fail(day_tag(rd) + " has no accommodation");
    if (day.is_transition() && day.transportation.mode == Transportation::Mode::none)
      v.fail(day_tag(rd) + " moves from " + day.city_from + " to " + day.city_to +
             " without transportation");
    for (MealKind meal : kMealKinds) {
      const auto& ref = day.meal(meal);
      if (ref && !match_meal_visit(day, meal))
        v.fail(day_tag(rd) + " " + meal_name(meal) + " '" + ref->raw +
               "' has no time window in the PoI list");
    }
  }
  return v.result();
}

ConstraintResult check_meal_gaps(const ResolvedPlan& plan) {
  Verdict v(ConstraintId::sufficient_meal_gaps);
  constexpr int kMinGap = 4 * 60;
  for (const auto& rd : plan.days) {
    const PoIVisit* prev = nullptr;
    MealKind prev_kind = MealKind::breakfast;
    for (MealKind meal : kMealKinds) {
      const PoIVisit* visit = match_meal_visit(*rd.day, meal);
      if (!visit) continue;
      if (prev && visit->window.start_min - prev->window.start_min < kMinGap)
        v.fail(day_tag(rd) + ": " + meal_name(prev_kind) + " at " +
               time_str(prev->window.start_min) + " and " + meal_name(meal) + " at " +
               time_str(visit->window.start_min) + " are less than 4 hours apart");
      prev = visit;
      prev_kind = meal;
    }
  }
  return v.result();
}

ConstraintResult check_valid_poi_list(const ResolvedPlan& plan, const CheckConfig& config) {
  Verdict v(ConstraintId::valid_poi_list);
  for (size_t i = 0; i < plan.days.size(); ++i) {
    const ResolvedDay& rd = plan.days[i];
    const DayRecord& day = *rd.day;
    bool final_day = i + 1 == plan.days.size();

    // where the day should begin: its own lodging, else last night's
    const PlaceRef* start_anchor = day.accommodation ? &*day.accommodation : nullptr;
    if (!start_anchor && i > 0 && plan.days[i - 1].day->accommodation)
      start_anchor = &*plan.days[i - 1].day->accommodation;

    if (day.poi_list.empty()) {
      if (start_anchor) v.fail(day_tag(rd) + " has an empty PoI list");
      continue;
    }
    if (start_anchor) {
      const PoIVisit& first = day.poi_list.front();
      if (first.verb != VisitVerb::stay || !names_match(first.name, *start_anchor))
        v.fail(day_tag(rd) + " does not start at the accommodation '" + start_anchor->name +
               "'");
    }
    if (!final_day && day.accommodation) {
      const PoIVisit& last = day.poi_list.back();
      if (last.verb != VisitVerb::stay || !names_match(last.name, *day.accommodation))
        v.fail(day_tag(rd) + " does not end at the accommodation '" + day.accommodation->name +
               "'");
    }

    // windows must be mutually disjoint (order on the page is free; the
    // ordering score judges sequencing)
    std::vector<const PoIVisit*> sorted;
    for (const auto& visit : day.poi_list) sorted.push_back(&visit);
    std::stable_sort(sorted.begin(), sorted.end(), [](const PoIVisit* a, const PoIVisit* b) {
      return a->window.start_min < b->window.start_min;
    });
    for (size_t k = 0; k + 1 < sorted.size(); ++k) {
      const PoIVisit& a = *sorted[k];
      const PoIVisit& b = *sorted[k + 1];
      if (a.window.effective_end_min() > b.window.start_min)
        v.fail(day_tag(rd) + ": '" + a.name + "' (" + time_str(a.window.start_min) + "-" +
               time_str(a.window.end_min) + ") overlaps '" + b.name + "' (" +
               time_str(b.window.start_min) + "-" + time_str(b.window.end_min) + ")");
    }

    if (day.transportation.mode != Transportation::Mode::flight) continue;
    const FlightLeg& leg = *day.transportation.flight;
    int dep = leg.departure_min;
    int arr = leg.arrival_min;
    bool wraps = leg.wraps_midnight();
    const PoIVisit* first_stay_after = nullptr;
    int last_end_before = -1;
    for (const auto& visit : day.poi_list) {
      int s = visit.window.start_min;
      int e = visit.window.effective_end_min();
      bool before = e <= dep;
      bool after = !wraps && s >= arr;
      if (!before && !after) {
        v.fail(day_tag(rd) + ": '" + visit.name + "' runs " + time_str(s) + "-" +
               time_str(visit.window.end_min) + " across flight " + leg.flight_number +
               " (departs " + time_str(dep) + ")");
        continue;
      }
      if (before) last_end_before = std::max(last_end_before, e);
      if (after && visit.verb == VisitVerb::stay &&
          (!first_stay_after || s < first_stay_after->window.start_min))
        first_stay_after = &visit;
    }
    if (first_stay_after && first_stay_after->window.start_min < arr + config.checkin_gap_min)
      v.fail(day_tag(rd) + ": check-in at '" + first_stay_after->name + "' " +
             time_str(first_stay_after->window.start_min) + " is under " +
             std::to_string(config.checkin_gap_min) + " min after the " + time_str(arr) +
             " arrival");
    if (last_end_before >= 0 && dep - last_end_before < config.checkout_gap_min)
      v.fail(day_tag(rd) + ": last visit ends " + time_str(last_end_before) + ", under " +
             std::to_string(config.checkout_gap_min) + " min before the " + time_str(dep) +
             " departure");
  }
  return v.result();
}

ConstraintResult check_diverse(ConstraintId id, const char* what,
                               const std::vector<std::pair<int, const PlaceRef*>>& choices) {
  Verdict v(id);
  std::map<std::string, int> first_day;
  for (const auto& [day_index, ref] : choices) {
    auto [it, fresh] = first_day.emplace(norm_name(ref->name), day_index);
    if (!fresh)
      v.fail(std::string(what) + " '" + ref->name + "' repeats on day " +
             std::to_string(day_index) + " (first chosen on day " + std::to_string(it->second) +
             ")");
  }
  return v.result();
}

ConstraintResult check_within_current_city(const ResolvedPlan& plan) {
  Verdict v(ConstraintId::within_current_city);
  auto check_place = [&](const ResolvedDay& rd, const ResolvedPlace* p, const char* what) {
    if (!p || !p->found() || p->in_day_city) return;
    v.fail(day_tag(rd) + " " + what + " '" + p->ref->name + "' is in " + p->record->city() +
           ", not the day's city");
  };
  for (const auto& rd : plan.days) {
    check_place(rd, place_of(rd.breakfast), "breakfast");
    check_place(rd, place_of(rd.lunch), "lunch");
    check_place(rd, place_of(rd.dinner), "dinner");
    for (const auto& a : rd.attractions) check_place(rd, &a, "attraction");
    check_place(rd, place_of(rd.accommodation), "accommodation");
    if (rd.event && rd.event->found() && !rd.event->in_day_city)
      v.fail(day_tag(rd) + " event '" + rd.event->ref->name + "' is in " +
             rd.event->record->city + ", not the day's city");
    for (const auto& rv : rd.visits)
      if (rv.found() && !rv.in_day_city)
        v.fail(day_tag(rd) + " PoI '" + rv.visit->name + "' is in " + rv.record->city() +
               ", not the day's city");
  }
  return v.result();
}

ConstraintResult check_city_route(const ResolvedPlan& plan, const Query& query) {
  Verdict v(ConstraintId::reasonable_city_route);
  const auto& days = plan.days;
  if (days.empty()) return v.result();

  if (norm_name(days.front().day->city_from) != norm_name(query.org))
    v.fail("trip starts in '" + days.front().day->city_from + "', not the origin '" + query.org +
           "'");
  for (size_t i = 0; i + 1 < days.size(); ++i)
    if (norm_name(days[i].day->city_to) != norm_name(days[i + 1].day->city_from))
      v.fail(day_tag(days[i]) + " ends in " + days[i].day->city_to + " but " +
             day_tag(days[i + 1]) + " starts in " + days[i + 1].day->city_from);

  // run-length collapse of where each day ends; no city twice, and the origin
  // may reappear only as the final stop (the trip home)
  std::vector<std::string> route;
  for (const auto& rd : days) {
    std::string c = norm_name(rd.day->city_to);
    if (route.empty() || route.back() != c) route.push_back(c);
  }
  std::string org = norm_name(query.org);
  std::set<std::string> seen;
  std::set<std::string> destinations;
  for (size_t i = 0; i < route.size(); ++i) {
    if (!seen.insert(route[i]).second)
      v.fail("city '" + route[i] + "' is revisited after leaving it");
    if (route[i] == org) {
      if (i + 1 != route.size()) v.fail("plan returns to the origin before the trip ends");
    } else {
      destinations.insert(route[i]);
    }
  }
  if (static_cast<int>(destinations.size()) != query.visiting_city_number)
    v.fail("plan visits " + std::to_string(destinations.size()) +
           " destination cities, query asks for " +
           std::to_string(query.visiting_city_number));

  for (const auto& rd : days) {
    const DayRecord& day = *rd.day;
    if (day.is_transition() && day.transportation.mode == Transportation::Mode::none)
      v.fail(day_tag(rd) + " changes city without listed transportation");
    if (day.transportation.mode == Transportation::Mode::flight) {
      const FlightLeg& leg = *day.transportation.flight;
      if (norm_name(leg.origin) != norm_name(day.city_from) ||
          norm_name(leg.dest) != norm_name(day.city_to))
        v.fail(day_tag(rd) + " flight goes " + leg.origin + " to " + leg.dest +
               " but the day runs " + day.city_from + " to " + day.city_to);
    }
  }
  return v.result();
}

bool is_self_driving(const Transportation& t) {
  return t.mode == Transportation::Mode::other && icontains(t.text, "self-driving");
}

ConstraintResult check_transport_conflict(const ResolvedPlan& plan) {
  Verdict v(ConstraintId::non_conflicting_transportation);
  bool flight = false, self_driving = false;
  for (const auto& rd : plan.days) {
    flight = flight || rd.day->transportation.mode == Transportation::Mode::flight;
    self_driving = self_driving || is_self_driving(rd.day->transportation);
  }
  if (flight && self_driving) v.fail("plan mixes flights with self-driving");
  return v.result();
}

}  // namespace

std::vector<ConstraintResult> check_commonsense(const ResolvedPlan& plan, const Query& query,
                                                const CheckConfig& config) {
  std::vector<std::pair<int, const PlaceRef*>> meal_choices, attraction_choices, event_choices;
  for (const auto& rd : plan.days) {
    const DayRecord& day = *rd.day;
    for (MealKind meal : kMealKinds)
      if (day.meal(meal)) meal_choices.emplace_back(day.day_index, &*day.meal(meal));
    for (const auto& ref : day.attractions) attraction_choices.emplace_back(day.day_index, &ref);
    if (day.event) event_choices.emplace_back(day.day_index, &*day.event);
  }

  std::vector<ConstraintResult> out;
  out.push_back(check_within_sandbox(plan));
  out.push_back(check_complete_information(plan));
  out.push_back(check_meal_gaps(plan));
  out.push_back(check_valid_poi_list(plan, config));
  out.push_back(check_diverse(ConstraintId::diverse_events, "event", event_choices));
  out.push_back(check_diverse(ConstraintId::diverse_restaurants, "restaurant", meal_choices));
  out.push_back(
      check_diverse(ConstraintId::diverse_attractions, "attraction", attraction_choices));
  out.push_back(check_within_current_city(plan));
  out.push_back(check_city_route(plan, query));
  out.push_back(check_transport_conflict(plan));
  return out;
}

std::vector<ConstraintResult> check_commonsense(const ItineraryPlan& plan, const Query& query,
                                                const Sandbox& sandbox,
                                                const CheckConfig& config) {
  return check_commonsense(resolve_plan(plan, sandbox, query.dates), query, config);
}

namespace {

int rooms_needed(const Accommodation& acc, int people) {
  if (!acc.max_occupancy || *acc.max_occupancy <= 0) return 1;
  return (people + *acc.max_occupancy - 1) / *acc.max_occupancy;
}

// cost over whatever resolves; strict=true throws on the first gap instead
double cost_of(const ResolvedPlan& plan, const Query& query, bool strict) {
  double total = 0;
  int people = query.people_number;
  for (const auto& rd : plan.days) {
    if (rd.flight) {
      if (rd.flight->record)
        total += rd.flight->record->price * people;
      else if (strict)
        throw NotFoundError(rd.flight->mismatch);
    }
    for (MealKind meal : kMealKinds) {
      const auto& place = rd.meal(meal);
      if (!place) continue;
      if (place->found())
        total += place->record->restaurant->avg_cost * people;
      else if (strict)
        throw NotFoundError("cannot price " + std::string(meal_name(meal)) + " '" +
                            place->ref->raw + "'");
    }
    if (rd.accommodation) {
      if (rd.accommodation->found()) {
        const Accommodation& acc = *rd.accommodation->record->accommodation;
        total += acc.price_per_night * rooms_needed(acc, people);
      } else if (strict) {
        throw NotFoundError("cannot price accommodation '" + rd.accommodation->ref->raw + "'");
      }
    }
  }
  return total;
}

std::string money(double v) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << v;
  std::string s = os.str();
  if (s.size() > 3 && s.substr(s.size() - 3) == ".00") s.resize(s.size() - 3);
  return "$" + s;
}

}  // namespace

double compute_cost(const ItineraryPlan& plan, const Query& query, const Sandbox& sandbox) {
  return cost_of(resolve_plan(plan, sandbox, query.dates), query, true);
}

double compute_cost_lenient(const ResolvedPlan& plan, const Query& query) {
  return cost_of(plan, query, false);
}

std::vector<ConstraintResult> check_hard(const ResolvedPlan& plan, const Query& query) {
  std::vector<ConstraintResult> out;
  auto not_applicable = [&](ConstraintId id) {
    ConstraintResult r;
    r.id = id;
    r.applicable = false;
    out.push_back(r);
  };

  {
    Verdict v(ConstraintId::budget);
    double cost = compute_cost_lenient(plan, query);
    if (cost > query.budget)
      v.fail("cost " + money(cost) + " exceeds budget " + money(query.budget));
    out.push_back(v.result());
  }

  // distinct accommodations actually resolved; repeat nights add nothing
  std::vector<const Accommodation*> stays;
  std::set<std::string> stay_names;
  std::set<std::string> cuisines_seen;
  std::set<std::string> event_types_seen;
  std::set<std::string> categories_seen;
  for (const auto& rd : plan.days) {
    if (rd.accommodation && rd.accommodation->found()) {
      const Accommodation* acc = rd.accommodation->record->accommodation;
      if (stay_names.insert(norm_name(acc->name)).second) stays.push_back(acc);
    }
    for (MealKind meal : kMealKinds) {
      const auto& place = rd.meal(meal);
      if (place && place->found())
        for (const auto& c : place->record->restaurant->cuisines)
          cuisines_seen.insert(norm_name(c));
    }
    if (rd.event && rd.event->found())
      event_types_seen.insert(norm_name(event_type_name(rd.event->record->type)));
    for (const auto& a : rd.attractions)
      if (a.found())
        for (const auto& c : a.record->attraction->categories)
          categories_seen.insert(norm_name(c));
  }

  if (query.local.house_rule) {
    Verdict v(ConstraintId::room_rule);
    std::string forbidden = norm_name("No " + *query.local.house_rule);
    for (const Accommodation* acc : stays)
      for (const auto& rule : acc->house_rules)
        if (norm_name(rule) == forbidden)
          v.fail("'" + acc->name + "' forbids " + *query.local.house_rule);
    out.push_back(v.result());
  } else {
    not_applicable(ConstraintId::room_rule);
  }

  if (query.local.room_type) {
    Verdict v(ConstraintId::room_type);
    const std::string& want = *query.local.room_type;
    bool not_shared = iequals(want, "not shared room");
    std::optional<RoomType> want_type = not_shared ? std::nullopt : parse_room_type(want);
    for (const Accommodation* acc : stays) {
      bool ok = not_shared ? acc->room_type != RoomType::shared
                           : want_type && acc->room_type == *want_type;
      if (!ok)
        v.fail("'" + acc->name + "' is a " + room_type_name(acc->room_type) + ", not " + want);
    }
    out.push_back(v.result());
  } else {
    not_applicable(ConstraintId::room_type);
  }

  if (!query.local.cuisines.empty()) {
    Verdict v(ConstraintId::cuisine);
    for (const auto& want : query.local.cuisines)
      if (!cuisines_seen.count(norm_name(want))) v.fail("no " + want + " meal in the plan");
    out.push_back(v.result());
  } else {
    not_applicable(ConstraintId::cuisine);
  }

  if (query.local.transportation) {
    Verdict v(ConstraintId::transportation);
    bool no_flight = iequals(*query.local.transportation, "no flight");
    for (const auto& rd : plan.days) {
      if (no_flight && rd.day->transportation.mode == Transportation::Mode::flight)
        v.fail(day_tag(rd) + " uses a flight against the 'no flight' request");
      if (!no_flight && is_self_driving(rd.day->transportation))
        v.fail(day_tag(rd) + " uses self-driving against the 'no self-driving' request");
    }
    out.push_back(v.result());
  } else {
    not_applicable(ConstraintId::transportation);
  }

  if (!query.local.event_types.empty()) {
    Verdict v(ConstraintId::event_types);
    for (const auto& want : query.local.event_types)
      if (!event_types_seen.count(norm_name(want))) v.fail("no " + want + " event attended");
    out.push_back(v.result());
  } else {
    not_applicable(ConstraintId::event_types);
  }

  if (!query.local.attraction_types.empty()) {
    Verdict v(ConstraintId::attraction_types);
    for (const auto& want : query.local.attraction_types)
      if (!categories_seen.count(norm_name(want))) v.fail("no " + want + " attraction visited");
    out.push_back(v.result());
  } else {
    not_applicable(ConstraintId::attraction_types);
  }

  return out;
}

std::vector<ConstraintResult> check_hard(const ItineraryPlan& plan, const Query& query,
                                         const Sandbox& sandbox) {
  return check_hard(resolve_plan(plan, sandbox, query.dates), query);
}

RateSummary aggregate_rates(const std::vector<ConstraintReport>& reports) {
  if (reports.empty()) throw EmptyInputError("no constraint reports to aggregate");
  RateSummary s;
  size_t total = reports.size();
  size_t delivered = 0, cs_all = 0, hard_all = 0, final_all = 0;
  size_t cs_checks = 0, cs_passed = 0, hard_checks = 0, hard_passed = 0;
  for (const auto& r : reports) {
    if (!r.delivered) continue;
    ++delivered;
    for (const auto& c : r.commonsense) {
      ++cs_checks;
      cs_passed += c.passed;
    }
    for (const auto& c : r.hard) {
      if (!c.applicable) continue;
      ++hard_checks;
      hard_passed += c.passed;
    }
    cs_all += r.commonsense_pass();
    hard_all += r.hard_pass();
    final_all += r.final_pass();
  }
  auto ratio = [](size_t num, size_t den) { return den == 0 ? 0.0 : double(num) / double(den); };
  s.delivery_rate = ratio(delivered, total);
  s.cpr_micro = ratio(cs_passed, cs_checks);
  s.cpr_macro = ratio(cs_all, total);
  s.hcpr_micro = ratio(hard_passed, hard_checks);
  s.hcpr_macro = ratio(hard_all, total);
  s.final_pass_rate = ratio(final_all, total);
  return s;
}

}  // namespace tripgrade
