#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tripgrade/params.hpp"
#include "tripgrade/plan.hpp"
#include "tripgrade/query.hpp"
#include "tripgrade/sandbox.hpp"

namespace tripgrade {

// Everything downstream of the seed is deterministic: same spec, same bytes.
struct GenSpec {
  std::uint64_t seed = 1;
  int days = 3;  // trip length: 3, 5 or 7
  int n_cities = 4;
  int n_restaurants_per_city = 12;
  int n_attractions_per_city = 30;
  int n_accommodations_per_city = 4;
  int n_events_per_city = 4;
};

// the calendar window all generated flights/events/queries live in
const std::vector<std::string>& generated_dates();

SandboxData generate_sandbox_data(const GenSpec& spec);  // throws ConfigError
// unique_ptr because Sandbox pins internal pointers and cannot move
std::unique_ptr<Sandbox> generate_sandbox(const GenSpec& spec);

// A plan that passes every commonsense and applicable hard check, with meal
// windows centered on the params' means (to the minute) and per-day attraction
// counts at the Poisson mode for the persona. Throws InfeasibleError naming
// the first requirement the sandbox cannot satisfy.
ItineraryPlan generate_gold_plan(const Query& query, const Persona& persona,
                                 const Sandbox& sandbox, const ParamSet& params);

struct GeneratedCase {
  QueryRecord record;
  ItineraryPlan gold;
};

// query + persona + gold plan; budget = 1.5x the gold plan's cost so Budget
// holds with headroom. salt varies cases under one sandbox.
// Throws InsufficientSandboxError when the sandbox has too few cities.
GeneratedCase generate_case(const GenSpec& spec, const Sandbox& sandbox, std::uint64_t salt);

enum class PerturbationKind {
  meal_shift,            // every matched meal window slides; t_meal drops
  transit_inflate,       // all transit distances scale up; s_spatial drops
  order_shuffle,         // one day's interior entries permute; s_ord drops
  duplicate_attraction,  // an earlier pick reappears; DiverseAttractions fails
  budget_bust,           // one flight swaps to a premium twin; Budget fails
  drop_accommodation,    // one night loses its stay; CompleteInformation fails
};

constexpr std::array<PerturbationKind, 6> kPerturbationKinds = {
    PerturbationKind::meal_shift,           PerturbationKind::transit_inflate,
    PerturbationKind::order_shuffle,        PerturbationKind::duplicate_attraction,
    PerturbationKind::budget_bust,          PerturbationKind::drop_accommodation,
};

const char* perturbation_name(PerturbationKind k);
std::optional<PerturbationKind> parse_perturbation(std::string_view s);

struct Perturbation {
  PerturbationKind kind = PerturbationKind::meal_shift;
  // hours for meal_shift; multiplier (> 1) for transit_inflate and budget_bust
  double amount = 0.5;
};

// Minimal edit that degrades exactly the targeted score or constraint and
// leaves every other continuous score bit-stable. budget_bust needs the
// sandbox to locate a pricier flight on the same route and schedule.
// Throws NotApplicableError when the plan offers nothing to edit that way.
ItineraryPlan perturb_plan(const ItineraryPlan& plan, const Perturbation& p, std::uint64_t seed,
                           const Sandbox* sandbox = nullptr);

/* ---- synthetic corpora for the estimators ---- */

// Plans of the class's day count whose three daily meal windows sample the
// class's bivariate normals, minute-rounded and kept inside the day.
std::vector<ItineraryPlan> sample_meal_corpus(DurationClass cls, int n_plans,
                                              std::uint64_t seed);

struct AttractionCorpus {
  std::vector<ItineraryPlan> plans;
  std::vector<Persona> personas;                  // index-aligned with plans
  std::map<std::string, double> category_means;   // attraction name -> hours
};

// Daily attraction counts ~ Poisson(lambda of the persona's type), durations
// at the count-adjusted mean plus Gaussian noise; ground truth = builtin params.
AttractionCorpus sample_attraction_corpus(DurationClass cls, int n_plans, std::uint64_t seed);

/* ---- dataset emission ---- */

struct DatagenManifest {
  std::filesystem::path dir;
  SandboxCounts counts;
  std::vector<std::string> query_ids;
};

// Writes the eight sandbox CSVs, queries.jsonl and gold/<id>.txt under dir.
DatagenManifest write_generated(const std::filesystem::path& dir, const GenSpec& spec,
                                int n_queries);

}  // namespace tripgrade
