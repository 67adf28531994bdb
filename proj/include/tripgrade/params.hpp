#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tripgrade/plan.hpp"
#include "tripgrade/vocab.hpp"

namespace tripgrade {

struct Persona;  // query.hpp

// bivariate-normal parameters for one meal kind: midpoint time (decimal hours),
// duration (hours), their std devs, and the correlation
struct MealKindParams {
  double mean_time = 0.0;
  double mean_duration = 0.0;
  double std_time = 0.0;
  double std_duration = 0.0;
  double beta = 0.0;
};

struct MealParams {
  MealKindParams breakfast, lunch, dinner;
  const MealKindParams& of(MealKind m) const;
  MealKindParams& of(MealKind m);
};

struct AttractionParams {
  double lambda_laidback = 0.0;
  double lambda_adventurous = 0.0;
  double sigma_d = 0.0;  // std dev of (observed duration - category mean), pooled
  int n_max = 0;
  int n_min = 0;
  double k = 0.0;  // per-attraction duration adjustment slope
  double lambda_for(TravelerType t) const {
    return t == TravelerType::laidback ? lambda_laidback : lambda_adventurous;
  }
};

struct ParamSet {
  DurationClass duration_class = DurationClass::d3;
  MealParams meals;
  AttractionParams attractions;
  std::map<std::string, double> category_durations;  // all 15 categories
};

// fitted values shipped with the tool, keyed by duration class
const ParamSet& builtin_params(DurationClass c);

/* ---- estimation from annotated plans ---- */

struct MealObservation {
  MealKind kind = MealKind::breakfast;
  double midpoint_h = 0.0;
  double duration_h = 0.0;
};

// meal windows matched via the day's meal fields; unmatched meals are skipped
std::vector<MealObservation> collect_meal_observations(const ItineraryPlan& plan);

// maps an attraction name to its category-mean hours; nullopt = unresolvable
using CategoryMeanResolver = std::function<std::optional<double>(const std::string& name)>;

// sample means, unbiased (N-1) std devs, Pearson beta, per duration class.
// A class is omitted when it has <2 observations or no variance in either
// coordinate; if every class is omitted the estimate is InsufficientData.
std::map<DurationClass, MealKindParams> estimate_meal_params(
    const std::vector<ItineraryPlan>& annotated_plans, MealKind meal);

// lambda per traveler type (mean daily count), pooled sigma_d, observed n
// extremes, and k = count-weighted |OLS slope| of mean daily duration vs count
// fitted per traveler type
std::map<DurationClass, AttractionParams> estimate_attraction_params(
    const std::vector<ItineraryPlan>& annotated_plans, const std::vector<Persona>& personas,
    const CategoryMeanResolver& category_mean);

/* ---- params.json ---- */

std::string params_to_json(const std::map<DurationClass, ParamSet>& sets);
std::map<DurationClass, ParamSet> params_from_json(const std::string& json_text);
void write_params_file(const std::string& path, const std::map<DurationClass, ParamSet>& sets);
std::map<DurationClass, ParamSet> read_params_file(const std::string& path);

}  // namespace tripgrade
