#include "tripgrade/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "tripgrade/errors.hpp"
#include "tripgrade/text.hpp"

namespace tripgrade {

double meal_window_score(double t_m, double d_m, const MealKindParams& params) {
  if (params.std_time <= 0 || params.std_duration <= 0)
    throw SingularCovarianceError("meal parameters have a zero deviation");
  if (std::abs(params.beta) >= 1.0)
    throw SingularCovarianceError("meal correlation |beta| >= 1");
  double zt = (t_m - params.mean_time) / params.std_time;
  double zd = (d_m - params.mean_duration) / params.std_duration;
  double m2 = (zt * zt - 2.0 * params.beta * zt * zd + zd * zd) / (1.0 - params.beta * params.beta);
  return std::exp(-0.5 * m2);
}

double temporal_meal_score(const ItineraryPlan& plan, const MealParams& params) {
  double sum = 0;
  int count = 0;
  for (const auto& day : plan.days) {
    for (MealKind meal : kMealKinds) {
      const PoIVisit* visit = match_meal_visit(day, meal);
      if (!visit) continue;
      sum += meal_window_score(visit->window.midpoint_hours(), visit->window.duration_hours(),
                               params.of(meal));
      ++count;
    }
  }
  if (count == 0) throw NoMealsError("plan schedules no meals with time windows");
  return sum / count;
}

std::vector<AttractionObservation> collect_attraction_observations(
    const ResolvedPlan& plan, const std::map<std::string, double>& category_durations) {
  std::vector<AttractionObservation> out;
  for (const auto& rd : plan.days) {
    for (const auto& rv : rd.visits) {
      if (rv.visit->kind != PoiKind::attraction || !rv.found()) continue;
      const Attraction& record = *rv.record->attraction;
      double sum = 0;
      int hits = 0;
      for (const auto& category : record.categories) {
        auto it = category_durations.find(category);
        if (it != category_durations.end()) {
          sum += it->second;
          ++hits;
        }
      }
      AttractionObservation obs;
      obs.name = rv.visit->name;
      obs.mu_type = hits ? sum / hits : record.visit_duration_h;
      obs.d_i = rv.visit->window.duration_hours();
      obs.day_index = rd.day->day_index;
      out.push_back(std::move(obs));
    }
  }
  return out;
}

namespace {

double ln_factorial(int n) {
  double v = 0;
  for (int i = 2; i <= n; ++i) v += std::log(double(i));
  return v;
}

}  // namespace

double temporal_attraction_score(const std::vector<AttractionObservation>& observations,
                                 TravelerType traveler, const AttractionParams& params) {
  if (observations.empty()) return 0.0;
  std::map<int, int> day_counts;
  for (const auto& obs : observations) ++day_counts[obs.day_index];

  double lambda = params.lambda_for(traveler);
  double sum = 0;
  for (const auto& obs : observations) {
    int n = day_counts[obs.day_index];
    double mu = traveler == TravelerType::laidback
                    ? obs.mu_type + params.k * (params.n_max - n)
                    : obs.mu_type - params.k * (n - params.n_min);
    double dev = obs.d_i - mu;
    double gauss = std::exp(-dev * dev / (2.0 * params.sigma_d * params.sigma_d));
    double poisson = std::exp(n * std::log(lambda) - lambda - ln_factorial(n));
    sum += gauss * poisson;
  }
  return sum / observations.size();
}

double temporal_attraction_score(const ResolvedPlan& plan, const Persona& persona,
                                 const ParamSet& params) {
  return temporal_attraction_score(
      collect_attraction_observations(plan, params.category_durations), persona.traveler(),
      params.attractions);
}

double spatial_poi_score(double distance_m) {
  constexpr double kThreshold = 5000.0;
  constexpr double kDecay = 0.0002;
  if (distance_m <= kThreshold) return 1.0 - 0.5 * distance_m / kThreshold;
  return 0.5 * std::exp(-kDecay * (distance_m - kThreshold));
}

double spatial_score(const ItineraryPlan& plan) {
  double sum = 0;
  int count = 0;
  for (const auto& day : plan.days) {
    for (const auto& visit : day.poi_list) {
      sum += spatial_poi_score(visit.transit_distance_m);
      ++count;
    }
  }
  return count == 0 ? 0.0 : sum / count;
}

size_t levenshtein(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  // single-row DP; row holds distances against a's prefix
  std::vector<size_t> row(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (size_t i = 1; i <= a.size(); ++i) {
    size_t diag = row[0];
    row[0] = i;
    for (size_t j = 1; j <= b.size(); ++j) {
      size_t next = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] != b[j - 1])});
      diag = row[j];
      row[j] = next;
    }
  }
  return row[b.size()];
}

namespace {

std::vector<std::string> day_sequence(const DayRecord& day) {
  std::vector<std::string> out;
  out.reserve(day.poi_list.size());
  for (const auto& visit : day.poi_list) out.push_back(norm_name(visit.name));
  return out;
}

}  // namespace

double ordering_score(const ItineraryPlan& plan, const ItineraryPlan& reference) {
  if (plan.days.size() != reference.days.size())
    throw DayCountMismatchError("plan has " + std::to_string(plan.days.size()) +
                                " days, reference has " +
                                std::to_string(reference.days.size()));
  if (plan.days.empty()) throw EmptyPlanError("no days to order");
  double sum = 0;
  for (size_t i = 0; i < plan.days.size(); ++i) {
    auto got = day_sequence(plan.days[i]);
    auto want = day_sequence(reference.days[i]);
    size_t longest = std::max(got.size(), want.size());
    sum += longest == 0 ? 1.0 : 1.0 - double(levenshtein(got, want)) / double(longest);
  }
  return sum / plan.days.size();
}

double persona_score(const ItineraryPlan& plan, const Persona& persona, Embedder& embedder) {
  std::vector<std::string> names = unique_poi_names(plan);
  if (names.empty()) throw EmptyPlanError("plan names no PoIs");
  std::vector<std::string> texts = persona.component_texts();
  size_t components = texts.size();
  texts.insert(texts.end(), names.begin(), names.end());
  std::vector<EmbeddingVector> vectors = embedder.embed(texts);
  double sum = 0;
  for (size_t j = 0; j < components; ++j)
    for (size_t i = components; i < vectors.size(); ++i)
      sum += cosine_similarity(vectors[j], vectors[i]);
  return sum / double(components * names.size());
}

ScoreReport evaluate_all(const ResolvedPlan& plan, const Persona& persona,
                         const ItineraryPlan* reference, const ParamSet& params,
                         Embedder& embedder) {
  ScoreReport report;
  try {
    report.t_meal = temporal_meal_score(*plan.plan, params.meals);
  } catch (const NoMealsError&) {
  }
  report.t_attrac = temporal_attraction_score(plan, persona, params);
  report.s_spatial = spatial_score(*plan.plan);
  try {
    report.s_persona = persona_score(*plan.plan, persona, embedder);
  } catch (const EmptyPlanError&) {
  }
  if (reference) {
    try {
      report.s_ord = ordering_score(*plan.plan, *reference);
    } catch (const DayCountMismatchError&) {
    } catch (const EmptyPlanError&) {
    }
  }
  return report;
}

ScoreReport evaluate_all(const ItineraryPlan& plan, const Query& query, const Persona& persona,
                         const ItineraryPlan* reference, const Sandbox& sandbox,
                         const ParamSet& params, Embedder& embedder) {
  return evaluate_all(resolve_plan(plan, sandbox, query.dates), persona, reference, params,
                      embedder);
}

}  // namespace tripgrade
