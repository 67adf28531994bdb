#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tripgrade/embedding.hpp"
#include "tripgrade/params.hpp"
#include "tripgrade/plan.hpp"
#include "tripgrade/query.hpp"
#include "tripgrade/resolution.hpp"

namespace tripgrade {

struct ScoreReport {
  std::optional<double> t_meal;
  std::optional<double> t_attrac;
  std::optional<double> s_spatial;
  std::optional<double> s_persona;
  std::optional<double> s_ord;  // absent when no reference plan was supplied
};

// peak-normalized bivariate normal density at (midpoint hours, duration hours);
// throws SingularCovarianceError when |beta| >= 1 or a deviation is zero
double meal_window_score(double t_m, double d_m, const MealKindParams& params);

// mean of meal_window_score over every named meal with a PoI-list window;
// throws NoMealsError when the plan has none
double temporal_meal_score(const ItineraryPlan& plan, const MealParams& params);

struct AttractionObservation {
  std::string name;
  double mu_type = 0;  // expected hours for the attraction's categories
  double d_i = 0;      // hours actually scheduled
  int day_index = 0;
};

// attraction visits with their expected durations; entries that do not
// resolve to a sandbox attraction are skipped
std::vector<AttractionObservation> collect_attraction_observations(
    const ResolvedPlan& plan, const std::map<std::string, double>& category_durations);

// Gaussian duration factor times an unnormalized Poisson weight on the
// day's visit count; 0 when there are no observations
double temporal_attraction_score(const std::vector<AttractionObservation>& observations,
                                 TravelerType traveler, const AttractionParams& params);
double temporal_attraction_score(const ResolvedPlan& plan, const Persona& persona,
                                 const ParamSet& params);

// 1 - d/(2*5000) out to 5 km, then exponential decay at 0.0002/m
double spatial_poi_score(double distance_m);
// mean over every PoI-list entry; 0 when the plan lists nothing
double spatial_score(const ItineraryPlan& plan);

size_t levenshtein(const std::vector<std::string>& a, const std::vector<std::string>& b);

// per-day 1 - ED/max(len), averaged; throws DayCountMismatchError
double ordering_score(const ItineraryPlan& plan, const ItineraryPlan& reference);

// mean cosine between the four persona component texts and every distinct
// PoI name; throws EmptyPlanError when the plan names no PoIs
double persona_score(const ItineraryPlan& plan, const Persona& persona, Embedder& embedder);

ScoreReport evaluate_all(const ResolvedPlan& plan, const Persona& persona,
                         const ItineraryPlan* reference, const ParamSet& params,
                         Embedder& embedder);
ScoreReport evaluate_all(const ItineraryPlan& plan, const Query& query, const Persona& persona,
                         const ItineraryPlan* reference, const Sandbox& sandbox,
                         const ParamSet& params, Embedder& embedder);

}  // namespace tripgrade
