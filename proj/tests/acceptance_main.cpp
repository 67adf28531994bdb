// Acceptance gate: ten end-to-end checks, each scored against an oracle
// computed independently of the library code under test. Prints one
// [PASS]/[FAIL] line per criterion; the exit code is the failure count.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fixtures.hpp"
#include "tripgrade/cli_report.hpp"
#include "tripgrade/constraints.hpp"
#include "tripgrade/datagen.hpp"
#include "tripgrade/embedding.hpp"
#include "tripgrade/errors.hpp"
#include "tripgrade/metrics.hpp"
#include "tripgrade/params.hpp"
#include "tripgrade/plan_parser.hpp"
#include "tripgrade/query.hpp"
#include "tripgrade/resolution.hpp"
#include "tripgrade/sandbox.hpp"

using namespace tripgrade;
namespace fs = std::filesystem;
using clock_type = std::chrono::steady_clock;

namespace {

void expect(bool ok, const std::string& what) {
  if (!ok) throw std::runtime_error(what);
}

double ms_since(clock_type::time_point t0) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

std::string fmt(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

bool near(double a, double b, double eps) { return std::fabs(a - b) <= eps; }

/* ---- criterion 1: spatial decay closed forms ---- */

std::string spatial_closed_forms() {
  auto t0 = clock_type::now();
  double at0 = spatial_poi_score(0.0);
  double at5k = spatial_poi_score(5000.0);
  double at10k = spatial_poi_score(10000.0);
  double elapsed = ms_since(t0);

  expect(near(at0, 1.0, 1e-9), "score at 0 m is " + fmt(at0, 12) + ", want 1");
  expect(near(at5k, 0.5, 1e-9), "score at 5 km is " + fmt(at5k, 12) + ", want 0.5");
  double tail = 0.5 * std::exp(-1.0);  // 0.183939...
  expect(near(at10k, tail, 1e-9),
         "score at 10 km is " + fmt(at10k, 12) + ", want " + fmt(tail, 12));
  expect(elapsed < 1.0, "took " + fmt(elapsed) + " ms, limit 1 ms");
  return "0 m / 5 km / 10 km all within 1e-9 (" + fmt(elapsed) + " ms)";
}

/* ---- criterion 2: meal score vs an explicit covariance-inverse oracle ---- */

// quadratic form through the inverted 2x2 covariance, no streamlined algebra
double meal_oracle(double t, double d, const MealKindParams& p) {
  double s11 = p.std_time * p.std_time;
  double s22 = p.std_duration * p.std_duration;
  double s12 = p.beta * p.std_time * p.std_duration;
  double det = s11 * s22 - s12 * s12;
  double i11 = s22 / det, i12 = -s12 / det, i22 = s11 / det;
  double dt = t - p.mean_time, dd = d - p.mean_duration;
  double q = dt * (i11 * dt + i12 * dd) + dd * (i12 * dt + i22 * dd);
  return std::exp(-0.5 * q);
}

std::string meal_closed_form() {
  for (DurationClass c : {DurationClass::d3, DurationClass::d5, DurationClass::d7})
    for (MealKind m : {MealKind::breakfast, MealKind::lunch, MealKind::dinner}) {
      const MealKindParams& p = builtin_params(c).meals.of(m);
      double v = meal_window_score(p.mean_time, p.mean_duration, p);
      expect(near(v, 1.0, 1e-12), "score at the means is " + fmt(v, 15) + ", want 1");
    }

  MealKindParams flat{12.0, 1.0, 2.0, 0.5, 0.0};
  double half = std::exp(-0.5);
  for (double t : {flat.mean_time + flat.std_time, flat.mean_time - flat.std_time}) {
    double v = meal_window_score(t, flat.mean_duration, flat);
    expect(near(v, half, 1e-9),
           "one-sigma time offset scores " + fmt(v, 12) + ", want exp(-1/2)");
  }

  const MealKindParams& b3 = builtin_params(DurationClass::d3).meals.breakfast;
  expect(near(b3.beta, 0.21, 1e-12), "correlated case lost its correlation");
  const double offsets[][2] = {{0.7, 0.1}, {-1.3, 0.25}, {2.0, -0.35}, {0.43, -0.18}};
  for (const auto& o : offsets) {
    double t = b3.mean_time + o[0], d = b3.mean_duration + o[1];
    double got = meal_window_score(t, d, b3);
    double want = meal_oracle(t, d, b3);
    expect(near(got, want, 1e-9),
           "correlated score at (" + fmt(t, 2) + ", " + fmt(d, 2) + ") is " + fmt(got, 12) +
               ", oracle says " + fmt(want, 12));
  }
  return "nine builtin kinds peak at 1, flat one-sigma = exp(-1/2), correlated "
         "points match the matrix-inverse oracle to 1e-9";
}

/* ---- criterion 3: ordering score vs a full-matrix edit-distance DP ---- */

size_t edit_distance_matrix(const std::vector<std::string>& a,
                            const std::vector<std::string>& b) {
  std::vector<std::vector<size_t>> m(a.size() + 1, std::vector<size_t>(b.size() + 1));
  for (size_t i = 0; i <= a.size(); ++i) m[i][0] = i;
  for (size_t j = 0; j <= b.size(); ++j) m[0][j] = j;
  for (size_t i = 1; i <= a.size(); ++i)
    for (size_t j = 1; j <= b.size(); ++j)
      m[i][j] = std::min({m[i - 1][j] + 1, m[i][j - 1] + 1,
                          m[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
  return m[a.size()][b.size()];
}

ItineraryPlan one_day_plan(const std::vector<std::string>& names) {
  ItineraryPlan plan;
  plan.days.emplace_back();
  plan.days[0].day_index = 1;
  for (const auto& n : names) {
    PoIVisit v;
    v.name = n;
    plan.days[0].poi_list.push_back(v);
  }
  return plan;
}

std::string ordering_oracle_equivalence() {
  std::mt19937 rng(4242);
  auto random_sequence = [&rng]() {
    std::vector<std::string> s(rng() % 9);
    for (auto& sym : s) sym = std::string(1, char('a' + rng() % 5));
    return s;
  };

  int identities = 0;
  for (int i = 0; i < 1000; ++i) {
    std::vector<std::string> a = random_sequence();
    std::vector<std::string> b = (i % 10 == 0) ? a : random_sequence();
    double got = ordering_score(one_day_plan(a), one_day_plan(b));
    size_t longest = std::max(a.size(), b.size());
    double want =
        longest == 0 ? 1.0 : 1.0 - double(edit_distance_matrix(a, b)) / double(longest);
    expect(got == want, "pair " + std::to_string(i) + " scored " + fmt(got, 15) +
                            ", oracle says " + fmt(want, 15));
    if (a == b) {
      expect(got == 1.0, "identical sequences scored " + fmt(got, 15));
      ++identities;
    }
  }
  expect(identities >= 100, "too few identity pairs exercised");
  return "1000 random pairs equal the DP oracle bit for bit, " +
         std::to_string(identities) + " identity pairs scored 1.0";
}

/* ---- criterion 4: single-attraction hand value ---- */

std::string attraction_hand_case() {
  const ParamSet& p3 = builtin_params(DurationClass::d3);
  // one museum visit, 4.12 h: with one visit that day the expected duration for
  // an easygoing traveler is exactly 3.0 + 0.28*(5-1) = 4.12, so the duration
  // factor is 1 and the whole score is the count weight 1.10 * exp(-1.10).
  std::vector<AttractionObservation> obs{{"City Museum", 3.0, 4.12, 1}};
  double got = temporal_attraction_score(obs, TravelerType::laidback, p3.attractions);
  double want = 1.10 * std::exp(-1.10);
  expect(near(got, want, 1e-6),
         "score is " + fmt(got, 9) + ", hand value " + fmt(want, 9));
  return "4.12 h museum visit scores " + fmt(got, 6) + " = 1.10*exp(-1.10) within 1e-6";
}

/* ---- criterion 5: estimator recovery from a sampled corpus ---- */

std::string estimator_recovery() {
  auto t0 = clock_type::now();
  // 3334 three-day plans -> 10002 breakfast windows
  std::vector<ItineraryPlan> plans = sample_meal_corpus(DurationClass::d3, 3334, 97);
  auto estimated = estimate_meal_params(plans, MealKind::breakfast);
  double elapsed = ms_since(t0);

  expect(plans.size() * 3 >= 10000, "corpus too small");
  expect(estimated.count(DurationClass::d3) == 1, "estimator dropped the 3-day class");
  const MealKindParams& got = estimated.at(DurationClass::d3);
  const MealKindParams& truth = builtin_params(DurationClass::d3).meals.breakfast;

  auto check_rel = [&](const char* name, double g, double t) {
    double rel = std::fabs(g - t) / std::fabs(t);
    expect(rel <= 0.05, std::string(name) + " recovered as " + fmt(g, 4) + " vs " +
                            fmt(t, 4) + " (off by " + fmt(100 * rel, 1) + "%)");
  };
  check_rel("mean time", got.mean_time, truth.mean_time);
  check_rel("mean duration", got.mean_duration, truth.mean_duration);
  check_rel("time std dev", got.std_time, truth.std_time);
  check_rel("duration std dev", got.std_duration, truth.std_duration);
  expect(near(got.beta, truth.beta, 0.05), "correlation recovered as " + fmt(got.beta, 4) +
                                               " vs " + fmt(truth.beta, 4));
  expect(elapsed < 2000.0, "took " + fmt(elapsed, 0) + " ms, limit 2 s");
  return "breakfast parameters recovered from 10002 sampled windows within 5% "
         "(correlation +/-0.05) in " +
         fmt(elapsed, 0) + " ms";
}

/* ---- criterion 6: generated gold plans pass everything ---- */

std::string gold_feasibility() {
  std::vector<ConstraintReport> reports;
  for (int days : {3, 5, 7})
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      GenSpec spec;
      spec.seed = seed;
      spec.days = days;
      auto sandbox = generate_sandbox(spec);
      GeneratedCase c = generate_case(spec, *sandbox, 0);
      ItineraryPlan parsed = parse_plan(serialize_plan(c.gold));

      ConstraintReport r;
      r.delivered = true;
      r.commonsense = check_commonsense(parsed, c.record.query, *sandbox);
      r.hard = check_hard(parsed, c.record.query, *sandbox);
      if (!r.final_pass()) {
        std::string why;
        for (const auto& res : r.commonsense)
          if (!res.passed) why += res.detail + "; ";
        for (const auto& res : r.hard)
          if (res.applicable && !res.passed) why += res.detail + "; ";
        expect(false, "seed " + std::to_string(seed) + ", " + std::to_string(days) +
                          "-day gold fails: " + why);
      }
      reports.push_back(std::move(r));
    }

  RateSummary rates = aggregate_rates(reports);
  expect(rates.delivery_rate == 1.0, "delivery rate " + fmt(rates.delivery_rate, 6));
  expect(rates.cpr_macro == 1.0, "cpr_macro " + fmt(rates.cpr_macro, 6));
  expect(rates.hcpr_macro == 1.0, "hcpr_macro " + fmt(rates.hcpr_macro, 6));
  expect(rates.final_pass_rate == 1.0, "final pass rate " + fmt(rates.final_pass_rate, 6));
  return "150 gold plans (50 seeds x 3 trip lengths) all deliver and pass every check";
}

/* ---- criterion 7: each perturbation degrades only its target ---- */

struct MetricVector {
  double v[5];  // t_meal, t_attrac, s_spatial, s_persona, s_ord
};

MetricVector score_bundle(const ItineraryPlan& plan, const GeneratedCase& c,
                          const Sandbox& sandbox) {
  BaselineEmbedder embedder;
  ScoreReport r = evaluate_all(plan, c.record.query, c.record.persona, &c.gold, sandbox,
                               builtin_params(c.record.query.duration_class()), embedder);
  expect(r.t_meal && r.t_attrac && r.s_spatial && r.s_persona && r.s_ord,
         "a metric went missing while scoring a perturbed plan");
  return {{*r.t_meal, *r.t_attrac, *r.s_spatial, *r.s_persona, *r.s_ord}};
}

std::string perturbation_monotonicity() {
  struct KindPlan {
    PerturbationKind kind;
    double amount;
    int metric;               // index into MetricVector, -1 when a constraint flips
    ConstraintId constraint;  // meaningful when metric == -1
  };
  const KindPlan kinds[] = {
      {PerturbationKind::meal_shift, 0.5, 0, ConstraintId::budget},
      {PerturbationKind::transit_inflate, 2.0, 2, ConstraintId::budget},
      {PerturbationKind::order_shuffle, 0.0, 4, ConstraintId::budget},
      {PerturbationKind::duplicate_attraction, 0.0, -1, ConstraintId::diverse_attractions},
      {PerturbationKind::budget_bust, 2.0, -1, ConstraintId::budget},
      {PerturbationKind::drop_accommodation, 0.0, -1, ConstraintId::complete_information},
  };

  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    GenSpec spec;
    spec.seed = 1000 + seed;
    auto sandbox = generate_sandbox(spec);
    GeneratedCase c = generate_case(spec, *sandbox, 0);
    MetricVector base = score_bundle(c.gold, c, *sandbox);

    for (const KindPlan& k : kinds) {
      ItineraryPlan mutated;
      try {
        mutated = perturb_plan(c.gold, {k.kind, k.amount}, 11, sandbox.get());
      } catch (const NotApplicableError& e) {
        expect(false, std::string(perturbation_name(k.kind)) + " not applicable on seed " +
                          std::to_string(seed) + ": " + e.what());
      }
      MetricVector after = score_bundle(mutated, c, *sandbox);

      for (int i = 0; i < 5; ++i) {
        if (i == k.metric) {
          expect(base.v[i] - after.v[i] > 1e-9,
                 std::string(perturbation_name(k.kind)) + " left its metric at " +
                     fmt(after.v[i], 12) + " (was " + fmt(base.v[i], 12) + ") on seed " +
                     std::to_string(seed));
        } else {
          expect(near(after.v[i], base.v[i], 1e-9),
                 std::string(perturbation_name(k.kind)) + " moved metric " +
                     std::to_string(i) + " by " + fmt(after.v[i] - base.v[i], 12) +
                     " on seed " + std::to_string(seed));
        }
      }

      if (k.metric < 0) {
        auto commonsense = check_commonsense(mutated, c.record.query, *sandbox);
        auto hard = check_hard(mutated, c.record.query, *sandbox);
        bool flipped = false;
        for (const auto& r : commonsense) {
          if (r.id == k.constraint)
            flipped = !r.passed;
          else
            expect(r.passed, std::string(perturbation_name(k.kind)) +
                                 " also broke " + constraint_id_name(r.id) + ": " + r.detail);
        }
        for (const auto& r : hard) {
          if (r.id == k.constraint)
            flipped = !r.passed;
          else
            expect(!r.applicable || r.passed,
                   std::string(perturbation_name(k.kind)) + " also broke " +
                       constraint_id_name(r.id) + ": " + r.detail);
        }
        expect(flipped, std::string(perturbation_name(k.kind)) + " failed to trip " +
                            constraint_id_name(k.constraint) + " on seed " +
                            std::to_string(seed));
      }
    }
  }
  return "six perturbation kinds over 50 gold plans: targets drop, everything "
         "else stays within 1e-9";
}

/* ---- criterion 8: reference plan round-trip + departure overrun detail ---- */

std::string reference_plan_fidelity() {
  const std::string& text = fixtures::charlotte_plan_text();
  ItineraryPlan plan = parse_plan(text);
  expect(plan.days.size() == 3, "parsed " + std::to_string(plan.days.size()) + " days");

  const std::vector<std::vector<std::string>> want_lists = {
      {"Affordable Spacious Refurbished Room in Bushwick!", "Nagaland's Kitchen",
       "The Charlotte Museum of History", "Cafe Maple Street", "Bombay Vada Pav",
       "Affordable Spacious Refurbished Room in Bushwick!"},
      {"Affordable Spacious Refurbished Room in Bushwick!", "Olive Tree Cafe",
       "The Mint Museum", "Birbal Ji Dhaba", "Romare Bearden Park", "Pind Balluchi",
       "Affordable Spacious Refurbished Room in Bushwick!"},
      {"Affordable Spacious Refurbished Room in Bushwick!", "Subway", "Books Monument",
       "Olive Tree Cafe", "Kylin Skybar"},
  };
  for (size_t d = 0; d < 3; ++d) {
    const auto& visits = plan.days[d].poi_list;
    expect(visits.size() == want_lists[d].size(),
           "day " + std::to_string(d + 1) + " lists " + std::to_string(visits.size()) +
               " entries, want " + std::to_string(want_lists[d].size()));
    for (size_t i = 0; i < visits.size(); ++i)
      expect(visits[i].name == want_lists[d][i],
             "day " + std::to_string(d + 1) + " entry " + std::to_string(i + 1) + " is '" +
                 visits[i].name + "', want '" + want_lists[d][i] + "'");
  }
  expect(serialize_plan(plan) == text, "serialization is not byte-stable");

  // A departure day that schedules lunch across its own 13:05 flight.
  SandboxData sd;
  sd.cities = {{"Santa Fe", "New Mexico"}, {"Denver", "Colorado"}};
  sd.flights = {{"F3932864", "Santa Fe", "Denver", "2022-03-10", 13 * 60 + 5, 14 * 60 + 16,
                 250.0}};
  sd.restaurants = {{"Tia Sophia's", "Santa Fe", {"American"}, 20.0},
                    {"La Plazuela", "Santa Fe", {"American"}, 30.0}};
  sd.attractions = {{"Museum of International Folk Art", "Santa Fe", {"Museums"}, 3.0}};
  sd.accommodations = {{"Cozy cottage in central Santa Fe", "Santa Fe", RoomType::entire,
                        {"No smoking"}, 150.0, 4}};
  sd.transit = {
      {"Cozy cottage in central Santa Fe", "Santa Fe", "Cottage Stop", 100.0},
      {"Tia Sophia's", "Santa Fe", "Plaza Stop", 120.0},
      {"Museum of International Folk Art", "Santa Fe", "Museum Hill Stop", 200.0},
      {"La Plazuela", "Santa Fe", "Cathedral @ Water", 130.45},
  };
  Sandbox sandbox(std::move(sd));

  std::string day_text =
      "Day 1:\n"
      "Current City: from Santa Fe to Denver\n"
      "Transportation: Flight Number: F3932864, from Santa Fe to Denver, Departure Time: "
      "13:05, Arrival Time: 14:16\n"
      "Breakfast: Tia Sophia's, Santa Fe\n"
      "Attraction: Museum of International Folk Art, Santa Fe\n"
      "Lunch: La Plazuela, Santa Fe\n"
      "Dinner: -\n"
      "Accommodation: -\n"
      "Event: -\n"
      "Point of Interest List: Cozy cottage in central Santa Fe, stay from 07:00 to 08:30, "
      "nearest transit: Cottage Stop, 100m away; Tia Sophia's, visit from 09:00 to 09:50, "
      "nearest transit: Plaza Stop, 120m away; Museum of International Folk Art, visit from "
      "10:30 to 12:30, nearest transit: Museum Hill Stop, 200m away; La Plazuela, visit from "
      "13:00 to 14:00, nearest transit: Cathedral @ Water, 130.45m away.\n";

  PlanFormatOptions free_form;
  free_form.benchmark_day_counts = false;
  ItineraryPlan day = parse_plan(day_text, free_form);
  expect(day.days.size() == 1 && day.days[0].poi_list.size() == 4,
         "departure-day fixture parsed wrong");

  Query q;
  q.org = "Santa Fe";
  q.dest = "Denver";
  q.days = 1;
  q.visiting_city_number = 1;
  q.dates = {"2022-03-10"};
  q.people_number = 2;
  q.budget = 5000.0;

  auto results = check_commonsense(day, q, sandbox);
  const ConstraintResult* poi_list = nullptr;
  for (const auto& r : results)
    if (r.id == ConstraintId::valid_poi_list) poi_list = &r;
  expect(poi_list != nullptr, "PoI-list check missing from the report");
  expect(!poi_list->passed, "the 13:00-14:00 lunch across a 13:05 departure passed");
  const std::string want_detail =
      "'La Plazuela' runs 13:00-14:00 across flight F3932864 (departs 13:05)";
  expect(poi_list->detail.find(want_detail) != std::string::npos,
         "overrun detail is '" + poi_list->detail + "'");
  return "reference plan parses to 3 days, re-serializes byte for byte; the "
         "13:05 departure overrun is named in the PoI-list detail";
}

/* ---- criterion 9: comparison averages over the shared deliveries ---- */

std::string comparison_intersection() {
  fixtures::TempDir tmp("acceptance-compare");
  GenSpec spec;
  spec.seed = 33;
  DatagenManifest man = write_generated(tmp.path, spec, 10);
  expect(man.query_ids.size() == 10, "expected ten generated queries");

  fs::path plans_a = tmp.path / "plans_a";
  fs::path plans_b = tmp.path / "plans_b";
  fs::create_directories(plans_a);
  fs::create_directories(plans_b);
  auto garble = [](const fs::path& p) {
    std::ofstream out(p, std::ios::binary);
    out << "this is not an itinerary\n";
  };
  for (int i = 1; i <= 10; ++i) {
    const std::string& id = man.query_ids[i - 1];
    fs::path gold = tmp.path / "gold" / (id + ".txt");
    if (i <= 8) fs::copy_file(gold, plans_a / (id + ".txt"));
    if (i == 9) garble(plans_a / (id + ".txt"));  // i == 10: no file at all
    if (i >= 3) fs::copy_file(gold, plans_b / (id + ".txt"));
    if (i == 1) garble(plans_b / (id + ".txt"));  // i == 2: no file at all
  }
  {  // give run B one weaker plan so the meal column separates the runs
    std::ifstream in(plans_b / (man.query_ids[4] + ".txt"), std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    ItineraryPlan shifted =
        perturb_plan(parse_plan(ss.str()), {PerturbationKind::meal_shift, 0.5}, 5);
    std::ofstream out(plans_b / (man.query_ids[4] + ".txt"), std::ios::binary);
    out << serialize_plan(shifted);
  }

  auto manifest = [&](const fs::path& plans, const char* out_name) {
    RunManifest m;
    m.sandbox_root = tmp.path;
    m.queries_file = tmp.path / "queries.jsonl";
    m.plans_dir = plans;
    m.gold_dir = tmp.path / "gold";
    m.jobs = 2;
    m.output_dir = tmp.path / out_name;
    return m;
  };
  RunManifest a = manifest(plans_a, "out_a");
  RunManifest b = manifest(plans_b, "out_b");

  ComparisonTable table = run_compare(a, b);
  std::vector<std::string> want_ids(man.query_ids.begin() + 2, man.query_ids.begin() + 8);
  expect(table.ids == want_ids, "intersection holds " + std::to_string(table.ids.size()) +
                                    " ids, want the middle six");

  // hand means: evaluate each run by itself, average the six shared plans
  RunResult ra = evaluate_plans(a, false);
  RunResult rb = evaluate_plans(b, false);
  auto hand_means = [&](const RunResult& run) {
    std::array<double, 5> sums{};
    size_t n = 0;
    for (const auto& ev : run.evaluations) {
      if (std::find(want_ids.begin(), want_ids.end(), ev.id) == want_ids.end()) continue;
      expect(ev.constraints.delivered, ev.id + " should be delivered in both runs");
      const std::optional<double>* cols[5] = {&ev.scores.t_meal, &ev.scores.t_attrac,
                                              &ev.scores.s_spatial, &ev.scores.s_persona,
                                              &ev.scores.s_ord};
      for (int j = 0; j < 5; ++j) {
        expect(cols[j]->has_value(), ev.id + " is missing a score");
        sums[j] += **cols[j];
      }
      ++n;
    }
    expect(n == 6, "hand mean saw " + std::to_string(n) + " plans");
    for (auto& s : sums) s /= double(n);
    return sums;
  };
  std::array<double, 5> ha = hand_means(ra);
  std::array<double, 5> hb = hand_means(rb);

  const ComparisonRow* all_row = nullptr;
  for (const auto& row : table.rows)
    if (row.category == "all") all_row = &row;
  expect(all_row != nullptr, "no overall row in the table");
  expect(all_row->plans == 6, "overall row counts " + std::to_string(all_row->plans));
  for (int j = 0; j < 5; ++j) {
    expect(all_row->mean_a[j].has_value() && all_row->mean_b[j].has_value(),
           "overall row is missing a mean");
    expect(*all_row->mean_a[j] == ha[j],
           std::string(kMetricColumns[j]) + " mean A " + fmt(*all_row->mean_a[j], 15) +
               " != hand " + fmt(ha[j], 15));
    expect(*all_row->mean_b[j] == hb[j],
           std::string(kMetricColumns[j]) + " mean B " + fmt(*all_row->mean_b[j], 15) +
               " != hand " + fmt(hb[j], 15));
  }
  expect(all_row->marker[0] == -1, "shifted meals should leave run A ahead on t_meal");
  for (int j = 1; j < 5; ++j)
    expect(all_row->marker[j] == 0,
           std::string(kMetricColumns[j]) + " should tie, marker is " +
               std::to_string(all_row->marker[j]));
  return "runs delivering 1-8 and 3-10 average over exactly the middle six; "
         "means match the by-hand averages bit for bit";
}

/* ---- criterion 10: evaluation throughput ---- */

std::string evaluation_throughput() {
  GenSpec spec;
  spec.seed = 777;
  spec.days = 7;
  auto sandbox = generate_sandbox(spec);

  std::vector<GeneratedCase> cases;
  cases.reserve(1000);
  for (std::uint64_t salt = 0; cases.size() < 1000; ++salt) {
    expect(salt < 5000, "could not assemble 1000 cases");
    try {
      cases.push_back(generate_case(spec, *sandbox, salt));
    } catch (const InfeasibleError&) {
      continue;
    }
  }

  const ParamSet& params = builtin_params(DurationClass::d7);
  std::atomic<size_t> cursor{0};
  std::atomic<int> bad{0};
  auto worker = [&]() {
    BaselineEmbedder embedder;
    for (;;) {
      size_t i = cursor.fetch_add(1);
      if (i >= cases.size()) break;
      try {
        const GeneratedCase& c = cases[i];
        ResolvedPlan resolved = resolve_plan(c.gold, *sandbox, c.record.query.dates);
        auto commonsense = check_commonsense(resolved, c.record.query);
        auto hard = check_hard(resolved, c.record.query);
        ScoreReport r = evaluate_all(resolved, c.record.persona, &c.gold, params, embedder);
        bool sane = commonsense.size() == 10 && hard.size() == 7 && r.t_meal &&
                    r.t_attrac && r.s_spatial && r.s_persona && r.s_ord;
        if (!sane) bad.fetch_add(1);
      } catch (...) {
        bad.fetch_add(1);
      }
    }
  };

  auto t0 = clock_type::now();
  std::vector<std::thread> pool;
  for (int t = 0; t < 4; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  double elapsed = ms_since(t0);

  expect(bad.load() == 0, std::to_string(bad.load()) + " plans came back incomplete");
  expect(elapsed < 5000.0, "took " + fmt(elapsed, 0) + " ms, limit 5 s");
  return "1000 seven-day plans checked and scored on 4 threads in " + fmt(elapsed, 0) +
         " ms";
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* what;
    std::string (*run)();
  };
  const Criterion criteria[] = {
      {1, "spatial decay closed forms", spatial_closed_forms},
      {2, "meal score vs covariance-inverse oracle", meal_closed_form},
      {3, "ordering score vs edit-distance oracle", ordering_oracle_equivalence},
      {4, "attraction score hand value", attraction_hand_case},
      {5, "meal parameter recovery", estimator_recovery},
      {6, "generated gold plans pass every check", gold_feasibility},
      {7, "perturbations degrade only their target", perturbation_monotonicity},
      {8, "reference plan fidelity and overrun detail", reference_plan_fidelity},
      {9, "comparison restricted to shared deliveries", comparison_intersection},
      {10, "evaluation throughput", evaluation_throughput},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    try {
      std::string note = c.run();
      std::printf("[PASS] criterion %d: %s — %s\n", c.number, c.what, note.c_str());
    } catch (const std::exception& e) {
      std::printf("[FAIL] criterion %d: %s — %s\n", c.number, c.what, e.what());
      ++failures;
    }
    std::fflush(stdout);
  }
  if (failures == 0)
    std::printf("all 10 criteria passed\n");
  else
    std::printf("%d of 10 criteria failed\n", failures);
  return failures;
}
