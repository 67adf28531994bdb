#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "tripgrade/datagen.hpp"
#include "tripgrade/errors.hpp"
#include "tripgrade/params.hpp"
#include "tripgrade/plan_parser.hpp"

using namespace tripgrade;

namespace {

void check_meal(const MealKindParams& p, double mt, double md, double st, double sd, double b) {
  CHECK(p.mean_time == doctest::Approx(mt));
  CHECK(p.mean_duration == doctest::Approx(md));
  CHECK(p.std_time == doctest::Approx(st));
  CHECK(p.std_duration == doctest::Approx(sd));
  CHECK(p.beta == doctest::Approx(b));
}

}  // namespace

TEST_CASE("built-in parameter tables") {
  const ParamSet& d3 = builtin_params(DurationClass::d3);
  CHECK(d3.duration_class == DurationClass::d3);
  check_meal(d3.meals.breakfast, 9.63, 0.90, 1.08, 0.24, 0.21);
  check_meal(d3.meals.lunch, 14.30, 1.11, 1.03, 0.36, 0.10);
  check_meal(d3.meals.dinner, 20.75, 1.19, 1.25, 0.43, -0.20);
  CHECK(d3.attractions.lambda_laidback == doctest::Approx(1.10));
  CHECK(d3.attractions.lambda_adventurous == doctest::Approx(2.01));
  CHECK(d3.attractions.sigma_d == doctest::Approx(1.11));
  CHECK(d3.attractions.n_max == 5);
  CHECK(d3.attractions.n_min == 0);
  CHECK(d3.attractions.k == doctest::Approx(0.28));

  const ParamSet& d5 = builtin_params(DurationClass::d5);
  check_meal(d5.meals.breakfast, 9.80, 1.08, 1.08, 1.43, 0.63);
  check_meal(d5.meals.lunch, 14.46, 1.10, 1.07, 0.35, 0.04);
  check_meal(d5.meals.dinner, 20.67, 1.32, 1.37, 0.91, -0.18);
  CHECK(d5.attractions.lambda_laidback == doctest::Approx(1.26));
  CHECK(d5.attractions.lambda_adventurous == doctest::Approx(1.61));
  CHECK(d5.attractions.sigma_d == doctest::Approx(1.07));
  CHECK(d5.attractions.n_max == 4);

  const ParamSet& d7 = builtin_params(DurationClass::d7);
  check_meal(d7.meals.breakfast, 9.84, 0.85, 1.34, 0.23, 0.03);
  check_meal(d7.meals.lunch, 14.44, 0.99, 1.07, 0.26, 0.30);
  check_meal(d7.meals.dinner, 20.42, 1.15, 1.66, 1.15, -0.07);
  CHECK(d7.attractions.lambda_laidback == doctest::Approx(1.11));
  CHECK(d7.attractions.lambda_adventurous == doctest::Approx(1.82));
  CHECK(d7.attractions.k == doctest::Approx(0.28));

  // every class carries the full category table
  for (DurationClass c : kDurationClasses) {
    const auto& durations = builtin_params(c).category_durations;
    CHECK(durations.size() == 15);
    CHECK(durations.at("Museums") == doctest::Approx(3.0));
    CHECK(durations.at("Water & Amusement Parks") == doctest::Approx(5.0));
    CHECK(durations.at("Shopping") == doctest::Approx(1.5));
    CHECK(durations.at("Nature & Parks") == doctest::Approx(4.5));
  }
  CHECK(attraction_categories().size() == 15);
  CHECK(category_hours("Zoos & Aquariums") == doctest::Approx(2.5));
  CHECK_FALSE(category_hours("Dungeons").has_value());
}

TEST_CASE("meal accessor mapping") {
  MealParams m;
  m.breakfast.mean_time = 9;
  m.lunch.mean_time = 14;
  m.dinner.mean_time = 20;
  CHECK(m.of(MealKind::breakfast).mean_time == 9);
  CHECK(m.of(MealKind::lunch).mean_time == 14);
  CHECK(m.of(MealKind::dinner).mean_time == 20);

  AttractionParams a;
  a.lambda_laidback = 1.1;
  a.lambda_adventurous = 2.0;
  CHECK(a.lambda_for(TravelerType::laidback) == 1.1);
  CHECK(a.lambda_for(TravelerType::adventure) == 2.0);
}

TEST_CASE("params json round trip") {
  std::map<DurationClass, ParamSet> sets;
  for (DurationClass c : kDurationClasses) sets[c] = builtin_params(c);

  auto back = params_from_json(params_to_json(sets));
  REQUIRE(back.size() == 3);
  for (DurationClass c : kDurationClasses) {
    const ParamSet& a = sets.at(c);
    const ParamSet& b = back.at(c);
    CHECK(a.meals.breakfast.mean_time == b.meals.breakfast.mean_time);
    CHECK(a.meals.lunch.std_duration == b.meals.lunch.std_duration);
    CHECK(a.meals.dinner.beta == b.meals.dinner.beta);
    CHECK(a.attractions.lambda_adventurous == b.attractions.lambda_adventurous);
    CHECK(a.attractions.n_max == b.attractions.n_max);
    CHECK(a.attractions.k == b.attractions.k);
    CHECK(a.category_durations == b.category_durations);
  }

  fixtures::TempDir tmp("params-file");
  auto path = (tmp.path / "params.json").string();
  write_params_file(path, sets);
  auto from_file = read_params_file(path);
  CHECK(from_file.at(DurationClass::d5).meals.breakfast.beta ==
        sets.at(DurationClass::d5).meals.breakfast.beta);

  CHECK_THROWS_AS(params_from_json("not json"), ConfigError);
  CHECK_THROWS_AS(params_from_json("[1,2]"), ConfigError);
  CHECK_THROWS_AS(params_from_json("{\"14-day\": {}}"), ConfigError);
  CHECK_THROWS_AS(read_params_file((tmp.path / "absent.json").string()), ConfigError);
}

TEST_CASE("meal observations from a plan") {
  ItineraryPlan plan = parse_plan(fixtures::charlotte_plan_text());
  auto obs = collect_meal_observations(plan);
  REQUIRE(obs.size() == 9);
  CHECK(obs[0].kind == MealKind::breakfast);
  CHECK(obs[0].midpoint_h == doctest::Approx(9.375));   // 09:00-09:45
  CHECK(obs[0].duration_h == doctest::Approx(0.75));
  CHECK(obs[2].kind == MealKind::dinner);
  CHECK(obs[2].midpoint_h == doctest::Approx(19.5));    // 19:00-20:00
}

TEST_CASE("meal estimator recovers the sampling distribution") {
  auto plans = sample_meal_corpus(DurationClass::d3, 1200, 42);
  REQUIRE(plans.size() == 1200);
  REQUIRE(plans[0].days.size() == 3);

  const MealKindParams& truth = builtin_params(DurationClass::d3).meals.breakfast;
  auto est = estimate_meal_params(plans, MealKind::breakfast);
  REQUIRE(est.count(DurationClass::d3) == 1);
  const MealKindParams& got = est.at(DurationClass::d3);
  CHECK(std::abs(got.mean_time - truth.mean_time) / truth.mean_time < 0.05);
  CHECK(std::abs(got.mean_duration - truth.mean_duration) / truth.mean_duration < 0.05);
  CHECK(std::abs(got.std_time - truth.std_time) / truth.std_time < 0.05);
  CHECK(std::abs(got.std_duration - truth.std_duration) / truth.std_duration < 0.05);
  CHECK(std::abs(got.beta - truth.beta) < 0.05);

  const MealKindParams& dinner_truth = builtin_params(DurationClass::d3).meals.dinner;
  auto dinner = estimate_meal_params(plans, MealKind::dinner).at(DurationClass::d3);
  CHECK(std::abs(dinner.mean_time - dinner_truth.mean_time) / dinner_truth.mean_time < 0.05);
  CHECK(std::abs(dinner.beta - dinner_truth.beta) < 0.05);
}

TEST_CASE("meal estimator refuses degenerate corpora") {
  // identical windows everywhere: zero variance in both coordinates
  ItineraryPlan fixed = sample_meal_corpus(DurationClass::d3, 1, 7)[0];
  for (auto& day : fixed.days) {
    REQUIRE(day.poi_list.size() == 3);
    day.poi_list[0].window = {9 * 60, 9 * 60 + 50, false};
    day.poi_list[1].window = {14 * 60, 15 * 60, false};
    day.poi_list[2].window = {20 * 60 + 30, 21 * 60 + 45, false};
  }
  std::vector<ItineraryPlan> clones = {fixed, fixed, fixed};
  CHECK_THROWS_AS(estimate_meal_params(clones, MealKind::lunch), InsufficientDataError);

  CHECK_THROWS_AS(estimate_meal_params({}, MealKind::lunch), InsufficientDataError);

  // a lone observation is not enough either
  ItineraryPlan one_day = fixed;
  one_day.days.resize(1);
  CHECK_THROWS_AS(estimate_meal_params({one_day}, MealKind::lunch), InsufficientDataError);
}

TEST_CASE("attraction estimator recovers the sampling distribution") {
  AttractionCorpus corpus = sample_attraction_corpus(DurationClass::d3, 800, 7);
  REQUIRE(corpus.plans.size() == 800);
  REQUIRE(corpus.personas.size() == 800);

  CategoryMeanResolver resolver = [&](const std::string& name) -> std::optional<double> {
    auto it = corpus.category_means.find(name);
    if (it == corpus.category_means.end()) return std::nullopt;
    return it->second;
  };

  const AttractionParams& truth = builtin_params(DurationClass::d3).attractions;
  auto est = estimate_attraction_params(corpus.plans, corpus.personas, resolver);
  REQUIRE(est.count(DurationClass::d3) == 1);
  const AttractionParams& got = est.at(DurationClass::d3);

  CHECK(std::abs(got.lambda_laidback - truth.lambda_laidback) / truth.lambda_laidback < 0.10);
  CHECK(std::abs(got.lambda_adventurous - truth.lambda_adventurous) /
            truth.lambda_adventurous <
        0.10);
  CHECK(got.n_max == truth.n_max);
  CHECK(got.n_min == truth.n_min);
  // the count-driven duration adjustment widens the pooled deviations a little
  CHECK(std::abs(got.sigma_d - truth.sigma_d) / truth.sigma_d < 0.15);
  CHECK(std::abs(got.k - truth.k) < 0.08);
}

TEST_CASE("attraction estimator input validation") {
  AttractionCorpus corpus = sample_attraction_corpus(DurationClass::d3, 10, 3);
  CategoryMeanResolver resolver = [&](const std::string& name) -> std::optional<double> {
    auto it = corpus.category_means.find(name);
    if (it == corpus.category_means.end()) return std::nullopt;
    return it->second;
  };

  std::vector<Persona> short_personas(corpus.personas.begin(), corpus.personas.end() - 1);
  CHECK_THROWS_AS(estimate_attraction_params(corpus.plans, short_personas, resolver),
                  QueryError);

  // one traveler type only: lambdas cannot be placed for both
  std::vector<Persona> all_laidback = corpus.personas;
  for (auto& p : all_laidback) p.traveler_type = "Laidback Traveler";
  CHECK_THROWS_AS(estimate_attraction_params(corpus.plans, all_laidback, resolver),
                  InsufficientDataError);

  CHECK_THROWS_AS(estimate_attraction_params({}, {}, resolver), InsufficientDataError);
}
