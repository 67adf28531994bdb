#include "tripgrade/resolution.hpp"

#include "tripgrade/text.hpp"
#include "tripgrade/timeutil.hpp"

namespace tripgrade {

const std::optional<ResolvedPlace>& ResolvedDay::meal(MealKind m) const {
  switch (m) {
    case MealKind::breakfast: return breakfast;
    case MealKind::lunch: return lunch;
    default: return dinner;
  }
}

namespace {

bool city_in(const std::vector<std::string>& cities, const std::string& city) {
  for (const auto& c : cities)
    if (norm_name(c) == norm_name(city)) return true;
  return false;
}

// shared matcher behind ResolvedPlace and ResolvedVisit
struct Match {
  std::optional<PoIRecord> record;
  bool ambiguous = false;
  bool in_day_city = false;
};

Match match_poi(const Sandbox& sandbox, PoiKind kind, const std::string& name,
                const std::optional<std::string>& explicit_city,
                const std::vector<std::string>& day_cities) {
  Match m;
  if (explicit_city) {
    // the plan claims a city; honor the claim rather than searching around it
    m.record = sandbox.find_poi_of(kind, name, *explicit_city);
    if (m.record) m.in_day_city = city_in(day_cities, *explicit_city);
    return m;
  }
  for (const auto& city : day_cities) {
    m.record = sandbox.find_poi_of(kind, name, city);
    if (m.record) {
      m.in_day_city = true;
      return m;
    }
  }
  auto cities = sandbox.cities_with_poi_of(kind, name);
  if (cities.size() == 1)
    m.record = sandbox.find_poi_of(kind, name, cities.front());
  else if (cities.size() > 1)
    m.ambiguous = true;
  return m;
}

ResolvedPlace resolve_place(const Sandbox& sandbox, const PlaceRef& ref, PoiKind kind,
                            const std::vector<std::string>& day_cities) {
  ResolvedPlace out;
  out.ref = &ref;
  out.expected = kind;
  Match m = match_poi(sandbox, kind, ref.name, ref.city, day_cities);
  // a PoI name may itself contain a comma; retry with the unsplit text
  if (!m.record && !m.ambiguous && ref.city)
    m = match_poi(sandbox, kind, ref.raw, std::nullopt, day_cities);
  out.record = m.record;
  out.ambiguous = m.ambiguous;
  out.in_day_city = m.in_day_city;
  return out;
}

ResolvedFlight resolve_flight(const Sandbox& sandbox, const FlightLeg& leg,
                              const std::string& date) {
  ResolvedFlight out;
  out.leg = &leg;
  auto matches = [&](const Flight& f) {
    return norm_name(f.origin) == norm_name(leg.origin) &&
           norm_name(f.dest) == norm_name(leg.dest) && f.departure_min == leg.departure_min &&
           f.arrival_min == leg.arrival_min;
  };
  if (!date.empty()) {
    const Flight* f = sandbox.find_flight(leg.flight_number, date);
    if (!f) {
      out.mismatch = "no flight " + leg.flight_number + " on " + date;
      return out;
    }
    if (!matches(*f)) {
      out.mismatch = "flight " + leg.flight_number + " on " + date + " runs " + f->origin +
                     " to " + f->dest + " " + format_time_minutes(f->departure_min) + "-" +
                     format_time_minutes(f->arrival_min) + ", not as planned";
      return out;
    }
    out.record = f;
    return out;
  }
  const Flight* hit = nullptr;
  for (const Flight* f : sandbox.flights_by_number(leg.flight_number)) {
    if (!matches(*f)) continue;
    if (hit) return out;  // same schedule on several dates: cannot pin one down
    hit = f;
  }
  if (hit)
    out.record = hit;
  else
    out.mismatch = "no flight " + leg.flight_number + " matching the planned route and times";
  return out;
}

ResolvedEventRef resolve_event(const Sandbox& sandbox, const PlaceRef& ref,
                               const std::vector<std::string>& day_cities) {
  ResolvedEventRef out;
  out.ref = &ref;
  if (ref.city) {
    out.record = sandbox.find_event(ref.name, *ref.city);
    if (!out.record) out.record = sandbox.find_event(ref.raw, *ref.city);
    if (out.record) out.in_day_city = city_in(day_cities, *ref.city);
    return out;
  }
  for (const auto& city : day_cities) {
    out.record = sandbox.find_event(ref.name, city);
    if (out.record) {
      out.in_day_city = true;
      return out;
    }
  }
  return out;
}

}  // namespace

ResolvedPlan resolve_plan(const ItineraryPlan& plan, const Sandbox& sandbox,
                          const std::vector<std::string>& dates) {
  ResolvedPlan out;
  out.plan = &plan;
  out.sandbox = &sandbox;
  out.days.reserve(plan.days.size());
  for (size_t i = 0; i < plan.days.size(); ++i) {
    const DayRecord& day = plan.days[i];
    ResolvedDay rd;
    rd.day = &day;
    if (i < dates.size()) rd.date = dates[i];
    rd.cities.push_back(day.city_to);
    if (day.is_transition()) rd.cities.push_back(day.city_from);

    if (day.transportation.mode == Transportation::Mode::flight)
      rd.flight = resolve_flight(sandbox, *day.transportation.flight, rd.date);

    for (MealKind meal : kMealKinds) {
      const auto& ref = day.meal(meal);
      if (!ref) continue;
      auto resolved = resolve_place(sandbox, *ref, PoiKind::restaurant, rd.cities);
      if (meal == MealKind::breakfast)
        rd.breakfast = resolved;
      else if (meal == MealKind::lunch)
        rd.lunch = resolved;
      else
        rd.dinner = resolved;
    }
    for (const auto& ref : day.attractions)
      rd.attractions.push_back(resolve_place(sandbox, ref, PoiKind::attraction, rd.cities));
    if (day.accommodation)
      rd.accommodation =
          resolve_place(sandbox, *day.accommodation, PoiKind::accommodation, rd.cities);
    if (day.event) rd.event = resolve_event(sandbox, *day.event, rd.cities);

    for (const auto& visit : day.poi_list) {
      ResolvedVisit rv;
      rv.visit = &visit;
      Match m = match_poi(sandbox, visit.kind, visit.name, std::nullopt, rd.cities);
      rv.record = m.record;
      rv.ambiguous = m.ambiguous;
      rv.in_day_city = m.in_day_city;
      rd.visits.push_back(std::move(rv));
    }
    out.days.push_back(std::move(rd));
  }
  return out;
}

}  // namespace tripgrade
