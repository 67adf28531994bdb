#include <doctest.h>

#include <string>

#include "fixtures.hpp"
#include "tripgrade/constraints.hpp"
#include "tripgrade/errors.hpp"
#include "tripgrade/plan_parser.hpp"

using namespace tripgrade;

namespace {

std::string edited(const std::string& needle, const std::string& replacement) {
  std::string text = fixtures::charlotte_plan_text();
  auto pos = text.find(needle);
  REQUIRE(pos != std::string::npos);
  text.replace(pos, needle.size(), replacement);
  return text;
}

ConstraintResult pick(const std::vector<ConstraintResult>& results, ConstraintId id) {
  for (const auto& r : results)
    if (r.id == id) return r;
  REQUIRE(false);
  return {};
}

}  // namespace

TEST_CASE("identifier and label tables") {
  CHECK(std::string(constraint_id_name(ConstraintId::valid_poi_list)) == "valid_poi_list");
  CHECK(std::string(constraint_id_name(ConstraintId::attraction_types)) == "attraction_types");
  CHECK(std::string(constraint_label(ConstraintId::valid_poi_list)) == "Valid PoI List");
  CHECK(std::string(constraint_label(ConstraintId::non_conflicting_transportation)) ==
        "Non-conflicting Transportation");
}

TEST_CASE("reference plan passes everything except the repeated cafe") {
  ItineraryPlan plan = parse_plan(fixtures::charlotte_plan_text());
  Sandbox sandbox(fixtures::charlotte_data());
  QueryRecord rec = fixtures::charlotte_query();

  auto results = check_commonsense(plan, rec.query, sandbox);
  REQUIRE(results.size() == 10);
  // fixed order, one entry per check
  CHECK(results[0].id == ConstraintId::within_sandbox);
  CHECK(results[3].id == ConstraintId::valid_poi_list);
  CHECK(results[9].id == ConstraintId::non_conflicting_transportation);

  for (const auto& r : results) {
    if (r.id == ConstraintId::diverse_restaurants) {
      CHECK_FALSE(r.passed);
      CHECK(r.detail ==
            "restaurant 'Olive Tree Cafe' repeats on day 3 (first chosen on day 2)");
    } else {
      CHECK(r.passed);
      CHECK(r.detail.empty());
    }
  }
}

TEST_CASE("cost arithmetic") {
  ItineraryPlan plan = parse_plan(fixtures::charlotte_plan_text());
  Sandbox sandbox(fixtures::charlotte_data());
  QueryRecord rec = fixtures::charlotte_query();

  // 7 people: flights (480+520)*7, meals 213*7, two nights at 120 for
  // ceil(7/4) = 2 rooms
  CHECK(compute_cost(plan, rec.query, sandbox) == doctest::Approx(8971.0).epsilon(1e-12));

  SUBCASE("unpriceable entities throw in strict mode, vanish in lenient mode") {
    ItineraryPlan ghost = parse_plan(edited("Breakfast: Subway, Charlotte",
                                            "Breakfast: Ghost Diner, Charlotte"));
    CHECK_THROWS_AS(compute_cost(ghost, rec.query, sandbox), NotFoundError);
    ResolvedPlan resolved = resolve_plan(ghost, sandbox, rec.query.dates);
    CHECK(compute_cost_lenient(resolved, rec.query) ==
          doctest::Approx(8971.0 - 12.0 * 7).epsilon(1e-12));
  }

  SUBCASE("unknown room capacity books one room") {
    SandboxData data = fixtures::charlotte_data();
    data.accommodations[0].max_occupancy.reset();
    Sandbox loose(data);
    CHECK(compute_cost(plan, rec.query, loose) ==
          doctest::Approx(8971.0 - 120.0 * 2).epsilon(1e-12));
  }
}

TEST_CASE("budget check fires on the computed cost") {
  ItineraryPlan plan = parse_plan(fixtures::charlotte_plan_text());
  Sandbox sandbox(fixtures::charlotte_data());
  QueryRecord rec = fixtures::charlotte_query();

  auto hard = check_hard(plan, rec.query, sandbox);
  REQUIRE(hard.size() == 7);
  CHECK(hard[0].id == ConstraintId::budget);
  CHECK(hard[0].applicable);
  CHECK(hard[0].passed);
  for (size_t i = 1; i < hard.size(); ++i) {
    CHECK_FALSE(hard[i].applicable);  // the query asked for nothing else
    CHECK(hard[i].passed);
  }

  rec.query.budget = 8971.0;  // exactly at cost still passes
  CHECK(pick(check_hard(plan, rec.query, sandbox), ConstraintId::budget).passed);

  rec.query.budget = 8000.0;
  const auto& broke = pick(check_hard(plan, rec.query, sandbox), ConstraintId::budget);
  CHECK_FALSE(broke.passed);
  CHECK(broke.detail == "cost $8971 exceeds budget $8000");
}

TEST_CASE("hard checks honor each request") {
  ItineraryPlan plan = parse_plan(fixtures::charlotte_plan_text());
  Sandbox sandbox(fixtures::charlotte_data());
  Query query = fixtures::charlotte_query().query;

  SUBCASE("house rule") {
    query.local.house_rule = "smoking";
    const auto& r = pick(check_hard(plan, query, sandbox), ConstraintId::room_rule);
    CHECK(r.applicable);
    CHECK_FALSE(r.passed);
    CHECK(r.detail ==
          "'Affordable Spacious Refurbished Room in Bushwick!' forbids smoking");
    query.local.house_rule = "pets";
    CHECK(pick(check_hard(plan, query, sandbox), ConstraintId::room_rule).passed);
  }

  SUBCASE("room type") {
    query.local.room_type = "shared room";
    const auto& r = pick(check_hard(plan, query, sandbox), ConstraintId::room_type);
    CHECK_FALSE(r.passed);
    CHECK(r.detail ==
          "'Affordable Spacious Refurbished Room in Bushwick!' is a Entire Room, not shared "
          "room");
    query.local.room_type = "not shared room";
    CHECK(pick(check_hard(plan, query, sandbox), ConstraintId::room_type).passed);
    query.local.room_type = "entire room";
    CHECK(pick(check_hard(plan, query, sandbox), ConstraintId::room_type).passed);
  }

  SUBCASE("cuisines must each show up") {
    query.local.cuisines = {"Indian", "French"};
    CHECK(pick(check_hard(plan, query, sandbox), ConstraintId::cuisine).passed);
    query.local.cuisines = {"Indian", "Thai"};
    const auto& r = pick(check_hard(plan, query, sandbox), ConstraintId::cuisine);
    CHECK_FALSE(r.passed);
    CHECK(r.detail == "no Thai meal in the plan");
  }

  SUBCASE("transportation requests") {
    query.local.transportation = "no flight";
    const auto& r = pick(check_hard(plan, query, sandbox), ConstraintId::transportation);
    CHECK_FALSE(r.passed);
    CHECK(r.detail ==
          "day 1 uses a flight against the 'no flight' request; day 3 uses a flight against "
          "the 'no flight' request");
    query.local.transportation = "no self-driving";
    CHECK(pick(check_hard(plan, query, sandbox), ConstraintId::transportation).passed);
  }

  SUBCASE("event and attraction types") {
    query.local.event_types = {"Music"};
    const auto& e = pick(check_hard(plan, query, sandbox), ConstraintId::event_types);
    CHECK_FALSE(e.passed);
    CHECK(e.detail == "no Music event attended");

    query.local.attraction_types = {"Museums", "Nature & Parks"};
    CHECK(pick(check_hard(plan, query, sandbox), ConstraintId::attraction_types).passed);
    query.local.attraction_types = {"Water & Amusement Parks"};
    const auto& a = pick(check_hard(plan, query, sandbox), ConstraintId::attraction_types);
    CHECK_FALSE(a.passed);
    CHECK(a.detail == "no Water & Amusement Parks attraction visited");
  }
}

TEST_CASE("visits may not straddle the flight") {
  Sandbox sandbox(fixtures::charlotte_data());
  QueryRecord rec = fixtures::charlotte_query();

  ItineraryPlan late = parse_plan(edited("Kylin Skybar, visit from 19:00 to 20:00",
                                         "Kylin Skybar, visit from 21:30 to 22:30"));
  const auto& r = pick(check_commonsense(late, rec.query, sandbox),
                       ConstraintId::valid_poi_list);
  CHECK_FALSE(r.passed);
  CHECK(r.detail ==
        "day 3: 'Kylin Skybar' runs 21:30-22:30 across flight F3786167 (departs 21:42)");
}

TEST_CASE("check-in and checkout margins are configurable") {
  ItineraryPlan plan = parse_plan(fixtures::charlotte_plan_text());
  Sandbox sandbox(fixtures::charlotte_data());
  QueryRecord rec = fixtures::charlotte_query();

  // day 1: arrival 07:28, first stay 08:00; day 3: last end 20:00, departure 21:42
  CheckConfig config;
  config.checkin_gap_min = 32;  // 07:28 + 32 = 08:00 exactly
  CHECK(pick(check_commonsense(plan, rec.query, sandbox, config),
             ConstraintId::valid_poi_list)
            .passed);

  config.checkin_gap_min = 33;
  const auto& tight = pick(check_commonsense(plan, rec.query, sandbox, config),
                           ConstraintId::valid_poi_list);
  CHECK_FALSE(tight.passed);
  CHECK(tight.detail ==
        "day 1: check-in at 'Affordable Spacious Refurbished Room in Bushwick!' 08:00 is "
        "under 33 min after the 07:28 arrival");

  config = CheckConfig{};
  config.checkout_gap_min = 102;  // 21:42 - 20:00 exactly
  CHECK(pick(check_commonsense(plan, rec.query, sandbox, config),
             ConstraintId::valid_poi_list)
            .passed);

  config.checkout_gap_min = 103;
  const auto& rushed = pick(check_commonsense(plan, rec.query, sandbox, config),
                            ConstraintId::valid_poi_list);
  CHECK_FALSE(rushed.passed);
  CHECK(rushed.detail ==
        "day 3: last visit ends 20:00, under 103 min before the 21:42 departure");
}

TEST_CASE("poi windows must be disjoint and anchored at the lodging") {
  Sandbox sandbox(fixtures::charlotte_data());
  QueryRecord rec = fixtures::charlotte_query();

  SUBCASE("overlap") {
    ItineraryPlan plan = parse_plan(edited("Birbal Ji Dhaba, visit from 14:00 to 15:30",
                                           "Birbal Ji Dhaba, visit from 14:00 to 16:30"));
    const auto& r = pick(check_commonsense(plan, rec.query, sandbox),
                         ConstraintId::valid_poi_list);
    CHECK_FALSE(r.passed);
    CHECK(r.detail ==
          "day 2: 'Birbal Ji Dhaba' (14:00-16:30) overlaps 'Romare Bearden Park' "
          "(16:00-18:00)");
  }

  SUBCASE("missing start anchor") {
    ItineraryPlan plan = parse_plan(
        edited("Point of Interest List: Affordable Spacious Refurbished Room in Bushwick!, "
               "stay from 07:00 to 08:30, nearest transit: Bushwick Stop, 100m away; Subway",
               "Point of Interest List: Subway"));
    const auto& r = pick(check_commonsense(plan, rec.query, sandbox),
                         ConstraintId::valid_poi_list);
    CHECK_FALSE(r.passed);
    CHECK(r.detail ==
          "day 3 does not start at the accommodation 'Affordable Spacious Refurbished Room "
          "in Bushwick!'");
  }
}

TEST_CASE("meals keep four hours between starts") {
  Sandbox sandbox(fixtures::charlotte_data());
  QueryRecord rec = fixtures::charlotte_query();

  ItineraryPlan plan = parse_plan(edited("Bombay Vada Pav, visit from 19:00 to 20:00",
                                         "Bombay Vada Pav, visit from 17:45 to 18:45"));
  const auto& r = pick(check_commonsense(plan, rec.query, sandbox),
                       ConstraintId::sufficient_meal_gaps);
  CHECK_FALSE(r.passed);
  CHECK(r.detail == "day 1: lunch at 14:00 and dinner at 17:45 are less than 4 hours apart");
}

TEST_CASE("complete information") {
  Sandbox sandbox(fixtures::charlotte_data());
  QueryRecord rec = fixtures::charlotte_query();

  SUBCASE("lodging required before the last day") {
    ItineraryPlan plan = parse_plan(
        edited("Accommodation: Affordable Spacious Refurbished Room in Bushwick!, Charlotte\n"
               "Event: -\n"
               "Point of Interest List: Affordable Spacious Refurbished Room in Bushwick!, "
               "stay from 08:00",
               "Accommodation: -\n"
               "Event: -\n"
               "Point of Interest List: Affordable Spacious Refurbished Room in Bushwick!, "
               "stay from 08:00"));
    const auto& r = pick(check_commonsense(plan, rec.query, sandbox),
                         ConstraintId::complete_information);
    CHECK_FALSE(r.passed);
    CHECK(r.detail == "day 1 has no accommodation");
  }

  SUBCASE("named meals need a window") {
    ItineraryPlan plan = parse_plan(
        edited("Subway, visit from 09:00 to 10:00, nearest transit: Subway Station, 150m "
               "away; Books Monument",
               "Books Monument"));
    const auto& r = pick(check_commonsense(plan, rec.query, sandbox),
                         ConstraintId::complete_information);
    CHECK_FALSE(r.passed);
    CHECK(r.detail == "day 3 breakfast 'Subway, Charlotte' has no time window in the PoI list");
  }

  SUBCASE("moving day needs transportation") {
    ItineraryPlan plan = parse_plan(
        edited("Transportation: Flight Number: F3786167, from Charlotte to Ithaca, Departure "
               "Time: 21:42, Arrival Time: 23:26",
               "Transportation: -"));
    auto results = check_commonsense(plan, rec.query, sandbox);
    const auto& info = pick(results, ConstraintId::complete_information);
    CHECK_FALSE(info.passed);
    CHECK(info.detail == "day 3 moves from Charlotte to Ithaca without transportation");
    const auto& route = pick(results, ConstraintId::reasonable_city_route);
    CHECK_FALSE(route.passed);
    CHECK(route.detail == "day 3 changes city without listed transportation");
  }
}

TEST_CASE("places outside the day's city are flagged") {
  SandboxData data = fixtures::charlotte_data();
  data.restaurants.push_back({"Ithaca Bakery", "Ithaca", {"American"}, 15.0});
  Sandbox sandbox(data);
  QueryRecord rec = fixtures::charlotte_query();

  std::string text = edited("Lunch: Birbal Ji Dhaba, Charlotte", "Lunch: Ithaca Bakery, Ithaca");
  auto pos = text.find("Birbal Ji Dhaba, visit");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, std::string("Birbal Ji Dhaba").size(), "Ithaca Bakery");
  ItineraryPlan plan = parse_plan(text);

  auto results = check_commonsense(plan, rec.query, sandbox);
  CHECK(pick(results, ConstraintId::within_sandbox).passed);  // it does exist
  const auto& r = pick(results, ConstraintId::within_current_city);
  CHECK_FALSE(r.passed);
  CHECK(r.detail ==
        "day 2 lunch 'Ithaca Bakery' is in Ithaca, not the day's city; day 2 PoI 'Ithaca "
        "Bakery' is in Ithaca, not the day's city");
}

TEST_CASE("unknown places fail the sandbox check") {
  Sandbox sandbox(fixtures::charlotte_data());
  QueryRecord rec = fixtures::charlotte_query();

  std::string text = edited("Attraction: Books Monument, Charlotte",
                            "Attraction: Mystery Spot, Charlotte");
  ItineraryPlan plan = parse_plan(text);
  const auto& r = pick(check_commonsense(plan, rec.query, sandbox),
                       ConstraintId::within_sandbox);
  CHECK_FALSE(r.passed);
  CHECK(r.detail ==
        "day 3 attraction 'Mystery Spot, Charlotte' is not in the sandbox");
}

TEST_CASE("route checks compare against the query") {
  ItineraryPlan plan = parse_plan(fixtures::charlotte_plan_text());
  Sandbox sandbox(fixtures::charlotte_data());
  Query query = fixtures::charlotte_query().query;

  SUBCASE("wrong origin") {
    query.org = "Boston";
    const auto& r = pick(check_commonsense(plan, query, sandbox),
                         ConstraintId::reasonable_city_route);
    CHECK_FALSE(r.passed);
    // Ithaca stops being "home", so the destination count slips too
    CHECK(r.detail ==
          "trip starts in 'Ithaca', not the origin 'Boston'; plan visits 2 destination "
          "cities, query asks for 1");
  }

  SUBCASE("wrong destination count") {
    query.visiting_city_number = 2;
    const auto& r = pick(check_commonsense(plan, query, sandbox),
                         ConstraintId::reasonable_city_route);
    CHECK_FALSE(r.passed);
    CHECK(r.detail == "plan visits 1 destination cities, query asks for 2");
  }

  SUBCASE("days must hand over cleanly") {
    ItineraryPlan broken = parse_plan(edited("Day 2:\nCurrent City: Charlotte",
                                             "Day 2:\nCurrent City: Ithaca"));
    const auto& r = pick(check_commonsense(broken, query, sandbox),
                         ConstraintId::reasonable_city_route);
    CHECK_FALSE(r.passed);
    CHECK(r.detail.find("day 1 ends in Charlotte but day 2 starts in Ithaca") !=
          std::string::npos);
    CHECK(r.detail.find("day 2 ends in Ithaca but day 3 starts in Charlotte") !=
          std::string::npos);
  }
}

TEST_CASE("flights and self-driving do not mix") {
  Sandbox sandbox(fixtures::charlotte_data());
  QueryRecord rec = fixtures::charlotte_query();

  ItineraryPlan plan = parse_plan(
      edited("Day 2:\nCurrent City: Charlotte\nTransportation: -",
             "Day 2:\nCurrent City: Charlotte\nTransportation: Self-driving, from Charlotte "
             "to Charlotte, duration 1h"));
  const auto& r = pick(check_commonsense(plan, rec.query, sandbox),
                       ConstraintId::non_conflicting_transportation);
  CHECK_FALSE(r.passed);
  CHECK(r.detail == "plan mixes flights with self-driving");
}

TEST_CASE("rate aggregation arithmetic") {
  ConstraintReport clean;
  clean.delivered = true;
  clean.commonsense = {{ConstraintId::valid_poi_list, true, true, ""},
                       {ConstraintId::diverse_events, true, true, ""}};
  clean.hard = {{ConstraintId::budget, true, true, ""},
                {ConstraintId::cuisine, true, false, ""}};  // never requested

  ConstraintReport dented;
  dented.delivered = true;
  dented.commonsense = {{ConstraintId::valid_poi_list, true, true, ""},
                        {ConstraintId::diverse_events, false, true, "event repeats"}};
  dented.hard = {{ConstraintId::budget, false, true, "over"}};

  ConstraintReport undelivered;
  undelivered.parse_error = "no days";

  auto rates = aggregate_rates({clean, dented, undelivered});
  CHECK(rates.delivery_rate == doctest::Approx(2.0 / 3.0));
  CHECK(rates.cpr_micro == doctest::Approx(3.0 / 4.0));
  CHECK(rates.cpr_macro == doctest::Approx(1.0 / 3.0));
  CHECK(rates.hcpr_micro == doctest::Approx(1.0 / 2.0));
  CHECK(rates.hcpr_macro == doctest::Approx(1.0 / 3.0));
  CHECK(rates.final_pass_rate == doctest::Approx(1.0 / 3.0));

  CHECK(clean.final_pass());
  CHECK_FALSE(dented.final_pass());
  CHECK_FALSE(undelivered.final_pass());
  CHECK(dented.hard_pass() == false);
  CHECK(clean.hard_pass());

  auto zeros = aggregate_rates({undelivered});
  CHECK(zeros.delivery_rate == 0.0);
  CHECK(zeros.cpr_micro == 0.0);  // no delivered checks at all
  CHECK(zeros.final_pass_rate == 0.0);

  CHECK_THROWS_AS(aggregate_rates({}), EmptyInputError);
}
