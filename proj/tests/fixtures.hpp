#pragma once
// Shared across test files: the Charlotte example plan, a sandbox that can
// resolve everything in it, and a scratch-directory guard.

#include <filesystem>
#include <random>
#include <string>

#include "tripgrade/query.hpp"
#include "tripgrade/sandbox.hpp"

namespace fixtures {

inline const std::string& charlotte_plan_text() {
  static const std::string text =
      "Day 1:\n"
      "Current City: from Ithaca to Charlotte\n"
      "Transportation: Flight Number: F3633413, from Ithaca to Charlotte, Departure Time: "
      "05:15, Arrival Time: 07:28\n"
      "Breakfast: Nagaland's Kitchen, Charlotte\n"
      "Attraction: The Charlotte Museum of History, Charlotte\n"
      "Lunch: Cafe Maple Street, Charlotte\n"
      "Dinner: Bombay Vada Pav, Charlotte\n"
      "Accommodation: Affordable Spacious Refurbished Room in Bushwick!, Charlotte\n"
      "Event: -\n"
      "Point of Interest List: Affordable Spacious Refurbished Room in Bushwick!, stay from "
      "08:00 to 08:30, nearest transit: Bushwick Stop, 100m away; Nagaland's Kitchen, visit "
      "from 09:00 to 09:45, nearest transit: Uptown Station, 200m away; The Charlotte Museum "
      "of History, visit from 10:30 to 13:30, nearest transit: Museum Station, 300m away; "
      "Cafe Maple Street, visit from 14:00 to 15:00, nearest transit: Maple Avenue Stop, 100m "
      "away; Bombay Vada Pav, visit from 19:00 to 20:00, nearest transit: Bombay Stop, 150m "
      "away; Affordable Spacious Refurbished Room in Bushwick!, stay from 21:00 to 07:00, "
      "nearest transit: Bushwick Stop, 100m away.\n"
      "\n"
      "Day 2:\n"
      "Current City: Charlotte\n"
      "Transportation: -\n"
      "Breakfast: Olive Tree Cafe, Charlotte\n"
      "Attraction: The Mint Museum, Charlotte; Romare Bearden Park, Charlotte\n"
      "Lunch: Birbal Ji Dhaba, Charlotte\n"
      "Dinner: Pind Balluchi, Charlotte\n"
      "Accommodation: Affordable Spacious Refurbished Room in Bushwick!, Charlotte\n"
      "Event: -\n"
      "Point of Interest List: Affordable Spacious Refurbished Room in Bushwick!, stay from "
      "07:00 to 08:30, nearest transit: Bushwick Stop, 100m away; Olive Tree Cafe, visit from "
      "09:00 to 09:45, nearest transit: Cafe Station, 250m away; The Mint Museum, visit from "
      "10:30 to 13:00, nearest transit: Mint Stop, 200m away; Birbal Ji Dhaba, visit from "
      "14:00 to 15:30, nearest transit: Dhaba Stop, 120m away; Romare Bearden Park, visit "
      "from 16:00 to 18:00, nearest transit: Park Stop, 150m away; Pind Balluchi, visit from "
      "19:30 to 21:00, nearest transit: Pind Stop, 150m away; Affordable Spacious Refurbished "
      "Room in Bushwick!, stay from 21:30 to 07:00, nearest transit: Bushwick Stop, 100m "
      "away.\n"
      "\n"
      "Day 3:\n"
      "Current City: from Charlotte to Ithaca\n"
      "Transportation: Flight Number: F3786167, from Charlotte to Ithaca, Departure Time: "
      "21:42, Arrival Time: 23:26\n"
      "Breakfast: Subway, Charlotte\n"
      "Attraction: Books Monument, Charlotte\n"
      "Lunch: Olive Tree Cafe, Charlotte\n"
      "Dinner: Kylin Skybar, Charlotte\n"
      "Accommodation: -\n"
      "Event: -\n"
      "Point of Interest List: Affordable Spacious Refurbished Room in Bushwick!, stay from "
      "07:00 to 08:30, nearest transit: Bushwick Stop, 100m away; Subway, visit from 09:00 to "
      "10:00, nearest transit: Subway Station, 150m away; Books Monument, visit from 10:30 to "
      "13:30, nearest transit: Central Library Stop, 200m away; Olive Tree Cafe, visit from "
      "14:00 to 15:00, nearest transit: Cafe Station, 250m away; Kylin Skybar, visit from "
      "19:00 to 20:00, nearest transit: Skybar Stop, 180m away.\n";
  return text;
}

// every PoI, flight and city the plan above names, priced for hand-checkable
// cost arithmetic: flights 480+520, meals sum to 213 per person, room 120/night
inline tripgrade::SandboxData charlotte_data() {
  using namespace tripgrade;
  SandboxData d;
  d.cities = {{"Ithaca", "New York"}, {"Charlotte", "North Carolina"}};
  d.flights = {
      {"F3633413", "Ithaca", "Charlotte", "2022-03-08", 5 * 60 + 15, 7 * 60 + 28, 480.0},
      {"F3786167", "Charlotte", "Ithaca", "2022-03-10", 21 * 60 + 42, 23 * 60 + 26, 520.0},
  };
  d.restaurants = {
      {"Nagaland's Kitchen", "Charlotte", {"Indian"}, 30.0},
      {"Cafe Maple Street", "Charlotte", {"French"}, 20.0},
      {"Bombay Vada Pav", "Charlotte", {"Indian"}, 25.0},
      {"Olive Tree Cafe", "Charlotte", {"Mediterranean"}, 18.0},
      {"Birbal Ji Dhaba", "Charlotte", {"Indian"}, 22.0},
      {"Pind Balluchi", "Charlotte", {"Indian"}, 28.0},
      {"Subway", "Charlotte", {"American"}, 12.0},
      {"Kylin Skybar", "Charlotte", {"Chinese"}, 40.0},
  };
  d.attractions = {
      {"The Charlotte Museum of History", "Charlotte", {"Museums"}, 3.0},
      {"The Mint Museum", "Charlotte", {"Museums"}, 3.0},
      {"Romare Bearden Park", "Charlotte", {"Nature & Parks"}, 4.5},
      {"Books Monument", "Charlotte", {"Sights & Landmarks"}, 3.0},
  };
  d.accommodations = {
      {"Affordable Spacious Refurbished Room in Bushwick!", "Charlotte", RoomType::entire,
       {"No smoking"}, 120.0, 4},
  };
  d.transit = {
      {"Affordable Spacious Refurbished Room in Bushwick!", "Charlotte", "Bushwick Stop", 100.0},
      {"Nagaland's Kitchen", "Charlotte", "Uptown Station", 200.0},
      {"The Charlotte Museum of History", "Charlotte", "Museum Station", 300.0},
      {"Cafe Maple Street", "Charlotte", "Maple Avenue Stop", 100.0},
      {"Bombay Vada Pav", "Charlotte", "Bombay Stop", 150.0},
      {"Olive Tree Cafe", "Charlotte", "Cafe Station", 250.0},
      {"The Mint Museum", "Charlotte", "Mint Stop", 200.0},
      {"Birbal Ji Dhaba", "Charlotte", "Dhaba Stop", 120.0},
      {"Romare Bearden Park", "Charlotte", "Park Stop", 150.0},
      {"Pind Balluchi", "Charlotte", "Pind Stop", 150.0},
      {"Subway", "Charlotte", "Subway Station", 150.0},
      {"Books Monument", "Charlotte", "Central Library Stop", 200.0},
      {"Kylin Skybar", "Charlotte", "Skybar Stop", 180.0},
  };
  return d;
}

inline tripgrade::QueryRecord charlotte_query() {
  tripgrade::QueryRecord rec;
  rec.id = "charlotte";
  rec.query.org = "Ithaca";
  rec.query.dest = "Charlotte";
  rec.query.days = 3;
  rec.query.visiting_city_number = 1;
  rec.query.dates = {"2022-03-08", "2022-03-09", "2022-03-10"};
  rec.query.people_number = 7;
  rec.query.budget = 30200.0;
  rec.query.level = "medium";
  rec.persona.traveler_type = "Laidback Traveler";
  rec.persona.purpose = "Relaxation";
  rec.persona.spending = "Economical Traveler";
  rec.persona.location = "Beaches";
  return rec;
}

struct TempDir {
  std::filesystem::path path;

  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path = std::filesystem::temp_directory_path() /
           (tag + "-" + std::to_string(rd() % 1000000));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

}  // namespace fixtures
