#include "tripgrade/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <utility>

#include "tripgrade/constraints.hpp"
#include "tripgrade/csv.hpp"
#include "tripgrade/errors.hpp"
#include "tripgrade/plan_parser.hpp"
#include "tripgrade/rng.hpp"
#include "tripgrade/text.hpp"
#include "tripgrade/timeutil.hpp"

namespace tripgrade {

namespace {

const std::vector<std::string> kCityPool = {
    "Brookhaven", "Marlow",      "Kestrel Falls", "Dunmore",  "Altona",
    "Pine Ridge", "Veranda",     "Thornbury",     "Eastgate", "Silverton",
    "Maple Shade", "Norwood",    "Crestline",     "Bayport",  "Linden",
    "Harrow",     "Westfall",    "Oakhurst",      "Redmont",  "Calder",
};

// each city gets a tag so names never collide across cities
const std::vector<std::string> kCityTags = {
    "Downtown", "Riverside", "Old Town", "Northside",
    "Harborside", "Uptown", "Parkside", "Westend",
};

// half the inventory carries a persona-flavored word so the persona metric
// has something to latch onto
const std::vector<std::string> kFlavorWords = {
    "Relaxing", "Adventure", "Cultural", "Nature",
    "Beachside", "Mountain", "Luxury",  "Budget",
};

const std::vector<std::string> kRestaurantBases = {
    "Copper Kettle",    "Juniper Table", "Saffron House",  "Blue Finch Diner",
    "Old Mill Grill",   "Lantern Court", "Garden Gate",    "Hearthstone Kitchen",
    "Silver Spoon",     "Rosewood Bistro", "Dockside Kitchen", "Amber Oven",
};

const std::vector<std::string> kAttractionBases = {
    "Harbor Light Museum", "Old Quarter Arcade",   "Riverwalk Gallery",
    "Grand Atrium",        "Falcon Ridge Trail",   "Union Hall",
    "Glasshouse Conservatory", "Pioneer Square",   "Beacon Hill Lookout",
    "Mercantile Row",      "Velvet Stage",         "Fountain Court",
    "Heritage Yard",       "Cedar Grove",          "Observatory Deck",
    "Mariner's Wharf",     "Clockwork Hall",       "Summit Tram",
    "Tidewater Basin",     "Ironworks Annex",      "Juniper Commons",
    "Lantern Bridge",      "Quarry Gardens",       "Signal Hill Battery",
    "Willow Court",        "Foundry Lane",         "Compass Rose Pier",
    "Meridian Steps",      "Orchard Terrace",      "Stonebrook Mill",
};

const std::vector<std::string> kAccommodationBases = {
    "Harborview Suites", "Garden Loft",    "Stonegate Inn",  "Traveler's Rest",
    "Quayside Rooms",    "Birchwood Stay", "Corner Attic",   "Meadow House",
};

const std::vector<std::string> kEventBases = {
    "Night Market", "Symphony Under Stars", "Short Film Week", "Derby Day",
    "Jazz on the Green", "Puppet Theatre Gala", "Harvest Cup", "Organ Recital",
};

// categories whose expected stay is short enough that gold plans can stack a
// Poisson-mode count of them between lunch and dinner
const std::vector<std::string>& light_categories() {
  static const std::vector<std::string> kLight = {"Shopping", "Fun & Games",
                                                  "Classes & Workshops"};
  return kLight;
}

std::string city_tag(size_t ci) {
  std::string tag = kCityTags[ci % kCityTags.size()];
  if (ci >= kCityTags.size()) tag += " " + std::to_string(ci / kCityTags.size() + 1);
  return tag;
}

// "«flavor» «tag» «base»" for even indexes, "«tag» «base»" for odd
std::string poi_name(size_t ci, size_t i, const std::vector<std::string>& bases) {
  std::string base = bases[i % bases.size()];
  if (i >= bases.size()) base += " " + std::to_string(i / bases.size() + 1);
  std::string name = city_tag(ci) + " " + base;
  if (i % 2 == 0) name = kFlavorWords[(i / 2) % kFlavorWords.size()] + " " + name;
  return name;
}

// distances print with at most two decimals, so draw them on that grid
double grid_distance(SplitMix64& rng, int lo_cm, int hi_cm) {
  return static_cast<double>(lo_cm + static_cast<int>(rng.below(hi_cm - lo_cm + 1))) / 100.0;
}

void require_positive(int v, const char* what) {
  if (v < 1) throw ConfigError(std::string(what) + " must be at least 1");
}

constexpr int kMorningDep = 6 * 60 + 30, kMorningArr = 8 * 60;
constexpr int kLateDep = 22 * 60 + 30, kLateArr = 23 * 60 + 55;
constexpr int kPremiumFactor = 100;

}  // namespace

const std::vector<std::string>& generated_dates() {
  static const std::vector<std::string> kDates = [] {
    std::vector<std::string> out;
    for (int d = 1; d <= 14; ++d) {
      char buf[16];
      std::snprintf(buf, sizeof buf, "2025-11-%02d", d);
      out.emplace_back(buf);
    }
    return out;
  }();
  return kDates;
}

SandboxData generate_sandbox_data(const GenSpec& spec) {
  if (spec.days != 3 && spec.days != 5 && spec.days != 7)
    throw ConfigError("trip length must be 3, 5 or 7 days");
  require_positive(spec.n_cities, "n_cities");
  require_positive(spec.n_restaurants_per_city, "n_restaurants_per_city");
  require_positive(spec.n_attractions_per_city, "n_attractions_per_city");
  require_positive(spec.n_accommodations_per_city, "n_accommodations_per_city");
  require_positive(spec.n_events_per_city, "n_events_per_city");

  SplitMix64 rng(spec.seed);
  SandboxData data;

  for (int ci = 0; ci < spec.n_cities; ++ci) {
    std::string name = ci < static_cast<int>(kCityPool.size())
                           ? kCityPool[ci]
                           : "Quarter " + std::to_string(ci + 1);
    data.cities.push_back({name, "Meridian"});
  }

  const auto& cats = attraction_categories();
  for (int ci = 0; ci < spec.n_cities; ++ci) {
    const std::string& city = data.cities[ci].name;

    for (int i = 0; i < spec.n_restaurants_per_city; ++i) {
      Restaurant r;
      r.name = poi_name(ci, i, kRestaurantBases);
      r.city = city;
      r.cuisines.push_back(cuisine_vocabulary()[i % cuisine_vocabulary().size()]);
      r.avg_cost = static_cast<double>(8 + rng.below(53));
      data.restaurants.push_back(std::move(r));
    }

    for (int i = 0; i < spec.n_attractions_per_city; ++i) {
      Attraction a;
      a.name = poi_name(ci, i, kAttractionBases);
      a.city = city;
      // the first six are short-stay so gold plans always find afternoon fits
      std::string cat = i < 6 ? light_categories()[i % 3] : cats[i % cats.size()].name;
      a.categories.push_back(cat);
      a.visit_duration_h = *category_hours(cat);
      data.attractions.push_back(std::move(a));
    }

    for (int i = 0; i < spec.n_accommodations_per_city; ++i) {
      Accommodation a;
      a.name = poi_name(ci, i, kAccommodationBases);
      a.city = city;
      a.room_type = std::array<RoomType, 3>{RoomType::entire, RoomType::private_room,
                                            RoomType::shared}[i % 3];
      switch (i % 4) {
        case 0: break;
        case 1: a.house_rules = {"No smoking"}; break;
        case 2: a.house_rules = {"No parties", "No pets"}; break;
        default: a.house_rules = {"No visitors", "No children under 10"}; break;
      }
      a.price_per_night = static_cast<double>(60 + rng.below(291));
      if (i % 4 != 0) a.max_occupancy = 2 + (i % 3);
      data.accommodations.push_back(std::move(a));
    }

    for (int i = 0; i < spec.n_events_per_city; ++i) {
      EventRecord e;
      e.name = city + " " + kEventBases[i % kEventBases.size()] +
               (i >= static_cast<int>(kEventBases.size())
                    ? " " + std::to_string(i / kEventBases.size() + 1)
                    : "");
      e.city = city;
      e.date = generated_dates()[rng.below(generated_dates().size())];
      e.type = std::array<EventType, 4>{EventType::music, EventType::sports,
                                        EventType::arts_theatre, EventType::film}[i % 4];
      data.events.push_back(std::move(e));
    }
  }

  for (const auto& r : data.restaurants)
    data.transit.push_back({r.name, r.city, r.name + " Stop", grid_distance(rng, 1000, 200000)});
  for (const auto& a : data.attractions)
    data.transit.push_back({a.name, a.city, a.name + " Stop", grid_distance(rng, 1000, 200000)});
  for (const auto& a : data.accommodations)
    data.transit.push_back({a.name, a.city, a.name + " Stop", grid_distance(rng, 1000, 200000)});

  int flight_serial = 0;
  auto next_number = [&flight_serial] {
    // 7-digit numbers, scrambled but collision-free
    int n = 3000000 + static_cast<int>((static_cast<long long>(flight_serial++) * 7919) % 7000000);
    return "F" + std::to_string(n);
  };
  for (const auto& date : generated_dates())
    for (const auto& from : data.cities)
      for (const auto& to : data.cities) {
        if (from.name == to.name) continue;
        double morning = static_cast<double>(80 + rng.below(321));
        double late = static_cast<double>(80 + rng.below(321));
        data.flights.push_back({next_number(), from.name, to.name, date, kMorningDep,
                                kMorningArr, morning});
        data.flights.push_back({next_number(), from.name, to.name, date, kLateDep, kLateArr,
                                late});
        // premium twins keep the same schedule at a hundred times the fare
        data.flights.push_back({next_number(), from.name, to.name, date, kMorningDep,
                                kMorningArr, morning * kPremiumFactor});
        data.flights.push_back({next_number(), from.name, to.name, date, kLateDep, kLateArr,
                                late * kPremiumFactor});
      }

  // a walking chain through each city's PoIs, enough to exercise the table
  for (int ci = 0; ci < spec.n_cities; ++ci) {
    const std::string& city = data.cities[ci].name;
    std::vector<const std::string*> names;
    for (const auto& a : data.accommodations)
      if (a.city == city) names.push_back(&a.name);
    for (const auto& r : data.restaurants)
      if (r.city == city) names.push_back(&r.name);
    for (const auto& a : data.attractions)
      if (a.city == city) names.push_back(&a.name);
    for (size_t i = 0; i + 1 < names.size(); ++i)
      data.distances.push_back({*names[i], *names[i + 1], city,
                                grid_distance(rng, 20000, 500000),
                                static_cast<double>(5 + rng.below(36))});
  }

  return data;
}

std::unique_ptr<Sandbox> generate_sandbox(const GenSpec& spec) {
  return std::make_unique<Sandbox>(generate_sandbox_data(spec));
}

namespace {

struct DayShape {
  std::string from, to;
  bool fly_in = false;   // morning arrival into `to`
  bool fly_out = false;  // late departure back home (final day only)
};

std::vector<DayShape> route_shapes(const std::string& org,
                                   const std::vector<std::string>& dests, int days) {
  std::vector<DayShape> shapes(days);
  int k = static_cast<int>(dests.size());
  for (int j = 0; j < k; ++j) {
    shapes[2 * j] = {j == 0 ? org : dests[j - 1], dests[j], true, false};
    if (2 * j + 1 < days - 1) shapes[2 * j + 1] = {dests[j], dests[j], false, false};
  }
  shapes[days - 1] = {dests.back(), org, false, true};
  return shapes;
}

const Flight* cheapest_flight(const Sandbox& sb, const std::string& from, const std::string& to,
                              const std::string& date, bool inbound, int latest_arr,
                              int earliest_dep) {
  const Flight* best = nullptr;
  for (const auto& f : sb.flights()) {
    if (f.date != date || !iequals(f.origin, from) || !iequals(f.dest, to)) continue;
    if (f.arrival_min < f.departure_min) continue;  // keep gold plans same-day
    if (inbound ? f.arrival_min > latest_arr : f.departure_min < earliest_dep) continue;
    if (!best || f.price < best->price ||
        (f.price == best->price && f.flight_number < best->flight_number))
      best = &f;
  }
  return best;
}

struct MealSlot {
  int start, end;
};

MealSlot meal_slot(const MealKindParams& p) {
  int dur = std::max<int>(1, static_cast<int>(std::llround(p.mean_duration * 60)));
  int mid = static_cast<int>(std::llround(p.mean_time * 60));
  int start = mid - dur / 2;
  return {start, start + dur};
}

PoIVisit visit_of(const Sandbox& sb, const std::string& name, const std::string& city,
                  PoiKind kind, VisitVerb verb, int start, int end) {
  const TransitLink* link = sb.find_transit(name, city);
  if (!link)
    throw InfeasibleError("no transit link for " + name + " in " + city);
  return {name, kind, verb, {start, end, end < start}, link->stop_name, link->distance_m};
}

}  // namespace

ItineraryPlan generate_gold_plan(const Query& query, const Persona& persona,
                                 const Sandbox& sandbox, const ParamSet& params) {
  int k = query.visiting_city_number;
  if (k < 1 || query.days != 2 * k + 1)
    throw InfeasibleError("route template needs 3/5/7 days visiting 1/2/3 cities");
  if (static_cast<int>(query.dates.size()) != query.days)
    throw InfeasibleError("query carries " + std::to_string(query.dates.size()) +
                          " dates for " + std::to_string(query.days) + " days");

  // destination order is pinned by sandbox order so the same query always
  // yields the same plan
  std::vector<std::string> dests;
  if (k == 1 && sandbox.has_city(query.dest)) {
    dests.push_back(sandbox.find_city(query.dest)->name);
  } else {
    for (const auto& c : sandbox.cities()) {
      if (iequals(c.name, query.org)) continue;
      dests.push_back(c.name);
      if (static_cast<int>(dests.size()) == k) break;
    }
    if (static_cast<int>(dests.size()) < k)
      throw InfeasibleError("sandbox has fewer than " + std::to_string(k + 1) + " cities");
  }

  TravelerType traveler = persona.traveler();
  const AttractionParams& ap = params.attractions;
  int per_day = std::max(1, static_cast<int>(ap.lambda_for(traveler)));  // Poisson mode
  double adjust = traveler == TravelerType::laidback
                      ? ap.k * (ap.n_max - per_day)
                      : -ap.k * (per_day - ap.n_min);

  MealSlot b = meal_slot(params.meals.breakfast);
  MealSlot l = meal_slot(params.meals.lunch);
  MealSlot d = meal_slot(params.meals.dinner);

  // trip-wide pools keep every pick distinct, which the diversity checks demand
  std::set<std::string> used_restaurants, used_attractions;

  auto pick_restaurant = [&](const std::string& city) -> const Restaurant* {
    const Restaurant* best = nullptr;
    for (const auto& r : sandbox.restaurants()) {
      if (!iequals(r.city, city) || used_restaurants.count(norm_name(r.name))) continue;
      if (!best || r.avg_cost < best->avg_cost ||
          (r.avg_cost == best->avg_cost && r.name < best->name))
        best = &r;
    }
    if (!best) throw InfeasibleError("not enough distinct restaurants in " + city);
    used_restaurants.insert(norm_name(best->name));
    return best;
  };

  auto pick_attraction = [&](const std::string& city) -> const Attraction* {
    const Attraction* best = nullptr;
    for (const auto& a : sandbox.attractions()) {
      if (!iequals(a.city, city) || used_attractions.count(norm_name(a.name))) continue;
      bool light = a.categories.size() == 1 && *category_hours(a.categories[0]) <= 1.5;
      if (!light) continue;  // long stays cannot fit the afternoon block
      if (!best || a.name < best->name) best = &a;
    }
    if (!best) throw InfeasibleError("not enough short-stay attractions in " + city);
    used_attractions.insert(norm_name(best->name));
    return best;
  };

  auto cheapest_stay = [&](const std::string& city) -> const Accommodation* {
    const Accommodation* best = nullptr;
    for (const auto& a : sandbox.accommodations()) {
      if (!iequals(a.city, city)) continue;
      if (!best || a.price_per_night < best->price_per_night ||
          (a.price_per_night == best->price_per_night && a.name < best->name))
        best = &a;
    }
    if (!best) throw InfeasibleError("no accommodation in " + city);
    return best;
  };

  auto shapes = route_shapes(query.org, dests, query.days);
  ItineraryPlan plan;

  for (int di = 0; di < query.days; ++di) {
    const DayShape& shape = shapes[di];
    bool final_day = di == query.days - 1;
    const std::string& date = query.dates[di];
    // meals, attractions and lodging live in the city toured that day; on the
    // way home that is still the last destination
    const std::string& city = final_day ? shape.from : shape.to;

    DayRecord day;
    day.day_index = di + 1;
    day.city_from = shape.from;
    day.city_to = shape.to;

    const Flight* flight = nullptr;
    if (shape.fly_in) {
      flight = cheapest_flight(sandbox, shape.from, shape.to, date, true, 485, 0);
      if (!flight)
        throw InfeasibleError("no usable morning flight " + shape.from + " -> " + shape.to +
                              " on " + date);
    } else if (shape.fly_out) {
      flight = cheapest_flight(sandbox, shape.from, shape.to, date, false, 0, d.end + 60);
      if (!flight)
        throw InfeasibleError("no usable evening flight " + shape.from + " -> " + shape.to +
                              " on " + date);
    }
    if (flight) {
      day.transportation.mode = Transportation::Mode::flight;
      day.transportation.flight = FlightLeg{flight->flight_number, flight->origin, flight->dest,
                                            flight->departure_min, flight->arrival_min};
    }

    const Accommodation* stay = cheapest_stay(city);
    if (!final_day) day.accommodation = PlaceRef::make(stay->name, city);

    const Restaurant* rb = pick_restaurant(city);
    const Restaurant* rl = pick_restaurant(city);
    const Restaurant* rd = pick_restaurant(city);
    day.breakfast = PlaceRef::make(rb->name, city);
    day.lunch = PlaceRef::make(rl->name, city);
    day.dinner = PlaceRef::make(rd->name, city);

    std::vector<const Attraction*> sights;
    for (int i = 0; i < per_day; ++i) sights.push_back(pick_attraction(city));
    for (const auto* a : sights) day.attractions.push_back(PlaceRef::make(a->name, city));

    // chronological PoI list; every day starts (and, before the last day,
    // ends) at the night's accommodation
    if (shape.fly_in) {
      int checkin = flight->arrival_min + 35;
      day.poi_list.push_back(visit_of(sandbox, stay->name, city, PoiKind::accommodation,
                                      VisitVerb::stay, checkin, checkin + 25));
    } else {
      day.poi_list.push_back(visit_of(sandbox, stay->name, city, PoiKind::accommodation,
                                      VisitVerb::stay, 420, 510));
    }
    day.poi_list.push_back(visit_of(sandbox, rb->name, city, PoiKind::restaurant,
                                    VisitVerb::visit, b.start, b.end));
    day.poi_list.push_back(visit_of(sandbox, rl->name, city, PoiKind::restaurant,
                                    VisitVerb::visit, l.start, l.end));
    int cursor = 945;  // mid-afternoon block between lunch and dinner
    for (const auto* a : sights) {
      int dur = std::max<int>(
          1, static_cast<int>(std::llround((a->visit_duration_h + adjust) * 60)));
      day.poi_list.push_back(visit_of(sandbox, a->name, city, PoiKind::attraction,
                                      VisitVerb::visit, cursor, cursor + dur));
      cursor += dur + 10;
    }
    day.poi_list.push_back(visit_of(sandbox, rd->name, city, PoiKind::restaurant,
                                    VisitVerb::visit, d.start, d.end));
    if (!final_day) {
      bool next_flies = shapes[di + 1].fly_in;
      day.poi_list.push_back(visit_of(sandbox, stay->name, city, PoiKind::accommodation,
                                      VisitVerb::stay, 1320, next_flies ? 345 : 420));
    }

    // the layout math above must actually produce a conflict-free day; custom
    // parameter sets can push windows together, which is a data problem, not a
    // caller bug
    int prev_end = -1;
    for (const auto& v : day.poi_list) {
      if (v.window.start_min < prev_end)
        throw InfeasibleError("parameter means push day " + std::to_string(di + 1) +
                              " windows into overlap");
      if (!v.window.wraps_midnight) prev_end = v.window.end_min;
    }
    if (shape.fly_out && d.end + 30 > flight->departure_min)
      throw InfeasibleError("dinner would run into the return flight");

    plan.days.push_back(std::move(day));
  }

  return plan;
}

GeneratedCase generate_case(const GenSpec& spec, const Sandbox& sandbox, std::uint64_t salt) {
  int k = visiting_cities_for_days(spec.days);
  if (k == 0) throw ConfigError("trip length must be 3, 5 or 7 days");
  const auto& cities = sandbox.cities();
  if (static_cast<int>(cities.size()) < k + 1)
    throw InsufficientSandboxError("need " + std::to_string(k + 1) + " cities, sandbox has " +
                                   std::to_string(cities.size()));

  SplitMix64 rng(spec.seed ^ (0x51F0D3B8C6A49E25ull + salt * 0x9E3779B97F4A7C15ull));

  Query q;
  size_t oi = rng.below(cities.size());
  q.org = cities[oi].name;
  q.days = spec.days;
  q.visiting_city_number = k;
  size_t first_date = rng.below(generated_dates().size() - spec.days + 1);
  for (int i = 0; i < spec.days; ++i) q.dates.push_back(generated_dates()[first_date + i]);
  q.people_number = 1 + static_cast<int>(rng.below(5));
  q.level = "easy";  // no local constraints are generated

  std::vector<std::string> dests;
  for (const auto& c : cities) {
    if (iequals(c.name, q.org)) continue;
    dests.push_back(c.name);
    if (static_cast<int>(dests.size()) == k) break;
  }
  q.dest = k == 1 ? dests[0] : cities[oi].state;

  Persona p;
  p.traveler_type = rng.below(2) == 0 ? "Laidback Traveler" : "Adventure Seeker";
  p.purpose = persona_purposes()[rng.below(persona_purposes().size())];
  p.spending = persona_spending_levels()[rng.below(persona_spending_levels().size())];
  p.location = persona_locations()[rng.below(persona_locations().size())];

  GeneratedCase out;
  char idbuf[16];
  std::snprintf(idbuf, sizeof idbuf, "q%04llu", static_cast<unsigned long long>(salt + 1));
  out.record.id = idbuf;
  out.gold = generate_gold_plan(q, p, sandbox, builtin_params(q.duration_class()));
  q.budget = 1.5 * compute_cost(out.gold, q, sandbox);
  out.record.query = std::move(q);
  out.record.persona = std::move(p);
  return out;
}

const char* perturbation_name(PerturbationKind k) {
  switch (k) {
    case PerturbationKind::meal_shift: return "meal_shift";
    case PerturbationKind::transit_inflate: return "transit_inflate";
    case PerturbationKind::order_shuffle: return "order_shuffle";
    case PerturbationKind::duplicate_attraction: return "duplicate_attraction";
    case PerturbationKind::budget_bust: return "budget_bust";
    default: return "drop_accommodation";
  }
}

std::optional<PerturbationKind> parse_perturbation(std::string_view s) {
  for (PerturbationKind k : kPerturbationKinds)
    if (iequals(s, perturbation_name(k))) return k;
  return std::nullopt;
}

namespace {

void shift_meals(ItineraryPlan& plan, double hours) {
  int delta = static_cast<int>(std::llround(hours * 60));
  if (delta == 0) throw NotApplicableError("meal shift rounds to zero minutes");
  bool any = false;
  for (auto& day : plan.days)
    for (MealKind m : kMealKinds)
      if (const PoIVisit* hit = match_meal_visit(day, m)) {
        auto& w = day.poi_list[hit - day.poi_list.data()].window;
        if (w.wraps_midnight || w.start_min + delta < 0 || w.end_min + delta > 1439)
          throw NotApplicableError("shifted meal would leave its day");
        w.start_min += delta;
        w.end_min += delta;
        any = true;
      }
  if (!any) throw NotApplicableError("no meal windows to shift");
}

void inflate_transit(ItineraryPlan& plan, double factor) {
  if (factor <= 1.0) throw NotApplicableError("inflation factor must exceed 1");
  bool any = false;
  for (auto& day : plan.days)
    for (auto& v : day.poi_list) {
      double scaled = std::round(v.transit_distance_m * factor * 100.0) / 100.0;
      if (scaled > v.transit_distance_m) {
        v.transit_distance_m = scaled;
        any = true;
      }
    }
  if (!any) throw NotApplicableError("no transit distances grow under that factor");
}

void shuffle_one_day(ItineraryPlan& plan, SplitMix64& rng) {
  std::vector<size_t> eligible;
  for (size_t di = 0; di < plan.days.size(); ++di) {
    const auto& list = plan.days[di].poi_list;
    if (list.size() < 4) continue;  // nothing between the anchors to permute
    std::set<std::string> names;
    for (size_t i = 1; i + 1 < list.size(); ++i) names.insert(norm_name(list[i].name));
    if (names.size() >= 2) eligible.push_back(di);
  }
  if (eligible.empty())
    throw NotApplicableError("no day has two distinct interior entries to reorder");

  auto& list = plan.days[eligible[rng.below(eligible.size())]].poi_list;
  size_t lo = 1, hi = list.size() - 2;
  auto names_of = [&] {
    std::vector<std::string> out;
    for (size_t i = lo; i <= hi; ++i) out.push_back(norm_name(list[i].name));
    return out;
  };
  auto before = names_of();
  for (int attempt = 0; attempt < 100; ++attempt) {
    for (size_t i = hi; i > lo; --i)
      std::swap(list[i], list[lo + rng.below(i - lo + 1)]);
    if (names_of() != before) return;
  }
  throw NotApplicableError("interior entries cannot be reordered distinctly");
}

void duplicate_attraction(ItineraryPlan& plan, SplitMix64& rng) {
  struct Candidate {
    size_t from_day, ref_index, to_day;
  };
  std::vector<Candidate> candidates;
  for (size_t e = 0; e < plan.days.size(); ++e)
    for (size_t ri = 0; ri < plan.days[e].attractions.size(); ++ri) {
      const PlaceRef& ref = plan.days[e].attractions[ri];
      std::string home = norm_name(ref.city ? *ref.city : plan.days[e].city_to);
      for (size_t l = e + 1; l < plan.days.size(); ++l)
        if (norm_name(plan.days[l].city_from) == home ||
            norm_name(plan.days[l].city_to) == home)
          candidates.push_back({e, ri, l});
    }
  if (candidates.empty())
    throw NotApplicableError("no earlier attraction lies in a later day's city");
  const Candidate& c = candidates[rng.below(candidates.size())];
  plan.days[c.to_day].attractions.push_back(plan.days[c.from_day].attractions[c.ref_index]);
}

void bust_budget(ItineraryPlan& plan, double factor, SplitMix64& rng, const Sandbox* sandbox) {
  if (!sandbox) throw NotApplicableError("needs the sandbox to find a pricier flight");
  if (factor <= 1.0) throw NotApplicableError("price factor must exceed 1");

  struct Candidate {
    size_t day;
    const Flight* current;
  };
  std::vector<Candidate> candidates;
  for (size_t di = 0; di < plan.days.size(); ++di) {
    const auto& t = plan.days[di].transportation;
    if (t.mode != Transportation::Mode::flight || !t.flight) continue;
    for (const Flight* f : sandbox->flights_by_number(t.flight->flight_number))
      if (iequals(f->origin, t.flight->origin) && iequals(f->dest, t.flight->dest) &&
          f->departure_min == t.flight->departure_min &&
          f->arrival_min == t.flight->arrival_min) {
        candidates.push_back({di, f});
        break;
      }
  }
  if (candidates.empty()) throw NotApplicableError("no resolvable flight leg to swap");

  const Candidate& c = candidates[rng.below(candidates.size())];
  const Flight* swap = nullptr;
  for (const auto& f : sandbox->flights()) {
    if (f.date != c.current->date || f.flight_number == c.current->flight_number) continue;
    if (!iequals(f.origin, c.current->origin) || !iequals(f.dest, c.current->dest)) continue;
    if (f.departure_min != c.current->departure_min ||
        f.arrival_min != c.current->arrival_min)
      continue;
    if (f.price < factor * c.current->price) continue;
    if (!swap || f.price < swap->price ||
        (f.price == swap->price && f.flight_number < swap->flight_number))
      swap = &f;
  }
  if (!swap)
    throw NotApplicableError("no same-schedule flight costs " + format_compact(factor) +
                             "x more");
  plan.days[c.day].transportation.flight->flight_number = swap->flight_number;
}

void drop_one_accommodation(ItineraryPlan& plan, SplitMix64& rng) {
  // keep the edit scoped to CompleteInformation: a day whose previous night was
  // somewhere else would also break the PoI-list anchor, so skip those
  std::vector<size_t> eligible;
  for (size_t di = 0; di + 1 < plan.days.size(); ++di) {
    if (!plan.days[di].accommodation) continue;
    if (di == 0 ||
        (plan.days[di - 1].accommodation &&
         norm_name(plan.days[di - 1].accommodation->name) ==
             norm_name(plan.days[di].accommodation->name)))
      eligible.push_back(di);
  }
  if (eligible.empty()) throw NotApplicableError("no night's stay can be dropped in isolation");
  plan.days[eligible[rng.below(eligible.size())]].accommodation.reset();
}

}  // namespace

ItineraryPlan perturb_plan(const ItineraryPlan& plan, const Perturbation& p, std::uint64_t seed,
                           const Sandbox* sandbox) {
  ItineraryPlan out = plan;
  SplitMix64 rng(seed ^ 0xC3D1E5F7A9B80246ull);
  switch (p.kind) {
    case PerturbationKind::meal_shift: shift_meals(out, p.amount); break;
    case PerturbationKind::transit_inflate: inflate_transit(out, p.amount); break;
    case PerturbationKind::order_shuffle: shuffle_one_day(out, rng); break;
    case PerturbationKind::duplicate_attraction: duplicate_attraction(out, rng); break;
    case PerturbationKind::budget_bust: bust_budget(out, p.amount, rng, sandbox); break;
    case PerturbationKind::drop_accommodation: drop_one_accommodation(out, rng); break;
  }
  return out;
}

std::vector<ItineraryPlan> sample_meal_corpus(DurationClass cls, int n_plans,
                                              std::uint64_t seed) {
  const MealParams& mp = builtin_params(cls).meals;
  SplitMix64 rng(seed ^ 0x7A3D95E1C48B6F02ull);
  int days = duration_class_days(cls);
  const char* table_names[3] = {"First Plate", "Second Plate", "Third Plate"};

  std::vector<ItineraryPlan> out;
  out.reserve(n_plans);
  for (int pi = 0; pi < n_plans; ++pi) {
    ItineraryPlan plan;
    for (int di = 0; di < days; ++di) {
      DayRecord day;
      day.day_index = di + 1;
      day.city_from = day.city_to = "Fielding";
      int mi = 0;
      for (MealKind m : kMealKinds) {
        const MealKindParams& k = mp.of(m);
        int start = 0, dur = 0;
        for (;;) {  // redraw the rare sample that falls off the day
          double z1 = rng.gaussian(), z2 = rng.gaussian();
          double t = k.mean_time + k.std_time * z1;
          double dh = k.mean_duration +
                      k.std_duration * (k.beta * z1 + std::sqrt(1 - k.beta * k.beta) * z2);
          dur = static_cast<int>(std::llround(dh * 60));
          start = static_cast<int>(std::llround(t * 60 - dur / 2.0));
          if (dur >= 1 && start >= 0 && start + dur <= 1439) break;
        }
        std::string name = table_names[mi++];
        day.meal(m) = PlaceRef::make(name, "Fielding");
        day.poi_list.push_back({name, PoiKind::restaurant, VisitVerb::visit,
                                {start, start + dur, false}, "Fielding Stop", 100.0});
      }
      plan.days.push_back(std::move(day));
    }
    out.push_back(std::move(plan));
  }
  return out;
}

AttractionCorpus sample_attraction_corpus(DurationClass cls, int n_plans, std::uint64_t seed) {
  const AttractionParams& ap = builtin_params(cls).attractions;
  const auto& cats = attraction_categories();
  SplitMix64 rng(seed ^ 0x36C9A840D5E17B93ull);
  int days = duration_class_days(cls);

  AttractionCorpus out;
  int serial = 0;
  for (int pi = 0; pi < n_plans; ++pi) {
    TravelerType t = pi % 2 == 0 ? TravelerType::laidback : TravelerType::adventure;
    Persona persona;
    persona.traveler_type = traveler_type_name(t);
    persona.purpose = "Relaxation";
    persona.spending = "Economical Traveler";
    persona.location = "Cities";

    ItineraryPlan plan;
    for (int di = 0; di < days; ++di) {
      DayRecord day;
      day.day_index = di + 1;
      day.city_from = day.city_to = "Fielding";
      int n = std::min(rng.poisson(ap.lambda_for(t)), ap.n_max);
      double adjust =
          t == TravelerType::laidback ? ap.k * (ap.n_max - n) : -ap.k * (n - ap.n_min);
      int cursor = 480;
      for (int i = 0; i < n; ++i) {
        const CategoryDuration& cat = cats[rng.below(cats.size())];
        double hours;
        do {
          hours = cat.hours + adjust + ap.sigma_d * rng.gaussian();
        } while (hours < 0.05);
        int dur = std::max<int>(1, static_cast<int>(std::llround(hours * 60)));
        std::string name = "Exhibit " + std::to_string(++serial);
        out.category_means[name] = cat.hours;
        day.attractions.push_back(PlaceRef::make(name, "Fielding"));
        day.poi_list.push_back({name, PoiKind::attraction, VisitVerb::visit,
                                {cursor, cursor + dur, false}, "Fielding Stop", 150.0});
        cursor += dur + 10;
      }
      plan.days.push_back(std::move(day));
    }
    out.plans.push_back(std::move(plan));
    out.personas.push_back(std::move(persona));
  }
  return out;
}

DatagenManifest write_generated(const std::filesystem::path& dir, const GenSpec& spec,
                                int n_queries) {
  if (n_queries < 0) throw ConfigError("query count cannot be negative");
  SandboxData data = generate_sandbox_data(spec);

  namespace fs = std::filesystem;
  fs::create_directories(dir / "gold");

  std::string stamp = std::string("generator: ") + SplitMix64::kAlgorithm +
                      " seed=" + std::to_string(spec.seed);

  {
    std::vector<std::vector<std::string>> rows;
    for (const auto& c : data.cities) rows.push_back({c.name, c.state});
    write_csv_file(dir / "cities.csv", {"name", "state"}, rows, stamp);
  }
  {
    std::vector<std::vector<std::string>> rows;
    for (const auto& f : data.flights)
      rows.push_back({f.flight_number, f.origin, f.dest, f.date,
                      format_time_minutes(f.departure_min), format_time_minutes(f.arrival_min),
                      format_compact(f.price)});
    write_csv_file(dir / "flights.csv",
                   {"flight_number", "origin", "dest", "date", "departure", "arrival", "price"},
                   rows, stamp);
  }
  {
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : data.restaurants) {
      std::string cuisines;
      for (const auto& c : r.cuisines) cuisines += (cuisines.empty() ? "" : "|") + c;
      rows.push_back({r.name, r.city, cuisines, format_compact(r.avg_cost)});
    }
    write_csv_file(dir / "restaurants.csv", {"name", "city", "cuisines", "avg_cost"}, rows,
                   stamp);
  }
  {
    std::vector<std::vector<std::string>> rows;
    for (const auto& a : data.attractions) {
      std::string categories;
      for (const auto& c : a.categories) categories += (categories.empty() ? "" : "|") + c;
      // duration left blank: the loader derives it from the categories
      rows.push_back({a.name, a.city, categories, ""});
    }
    write_csv_file(dir / "attractions.csv", {"name", "city", "categories", "visit_duration"},
                   rows, stamp);
  }
  {
    std::vector<std::vector<std::string>> rows;
    for (const auto& a : data.accommodations) {
      std::string rules;
      for (const auto& r : a.house_rules) rules += (rules.empty() ? "" : "|") + r;
      rows.push_back({a.name, a.city, room_type_name(a.room_type), rules,
                      format_compact(a.price_per_night),
                      a.max_occupancy ? std::to_string(*a.max_occupancy) : ""});
    }
    write_csv_file(
        dir / "accommodations.csv",
        {"name", "city", "room_type", "house_rules", "price_per_night", "max_occupancy"}, rows,
        stamp);
  }
  {
    std::vector<std::vector<std::string>> rows;
    for (const auto& e : data.events)
      rows.push_back({e.name, e.city, e.date, event_type_name(e.type)});
    write_csv_file(dir / "events.csv", {"name", "city", "date", "event_type"}, rows, stamp);
  }
  {
    std::vector<std::vector<std::string>> rows;
    for (const auto& t : data.transit)
      rows.push_back({t.poi_name, t.city, t.stop_name, format_compact(t.distance_m)});
    write_csv_file(dir / "transit.csv", {"poi_name", "city", "stop_name", "distance_m"}, rows,
                   stamp);
  }
  {
    std::vector<std::vector<std::string>> rows;
    for (const auto& d : data.distances)
      rows.push_back({d.from_poi, d.to_poi, d.city, format_compact(d.distance_m),
                      format_compact(d.travel_time_min)});
    write_csv_file(dir / "distances.csv",
                   {"from", "to", "city", "distance_m", "travel_time_min"}, rows, stamp);
  }

  Sandbox sandbox(std::move(data));

  DatagenManifest manifest;
  manifest.dir = dir;
  manifest.counts = sandbox.counts();

  std::ofstream queries(dir / "queries.jsonl", std::ios::binary);
  if (!queries) throw ConfigError("cannot write " + (dir / "queries.jsonl").string());
  for (int i = 0; i < n_queries; ++i) {
    GeneratedCase c = generate_case(spec, sandbox, static_cast<std::uint64_t>(i));
    queries << query_record_to_json(c.record) << "\n";
    std::ofstream gold(dir / "gold" / (c.record.id + ".txt"), std::ios::binary);
    if (!gold) throw ConfigError("cannot write gold plan " + c.record.id);
    gold << serialize_plan(c.gold);
    manifest.query_ids.push_back(c.record.id);
  }
  return manifest;
}

}  // namespace tripgrade
