#include "tripgrade/params.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tripgrade/errors.hpp"
#include "tripgrade/query.hpp"

namespace tripgrade {

const MealKindParams& MealParams::of(MealKind m) const {
  switch (m) {
    case MealKind::breakfast: return breakfast;
    case MealKind::lunch: return lunch;
    default: return dinner;
  }
}

MealKindParams& MealParams::of(MealKind m) {
  switch (m) {
    case MealKind::breakfast: return breakfast;
    case MealKind::lunch: return lunch;
    default: return dinner;
  }
}

namespace {

std::map<std::string, double> builtin_category_durations() {
  std::map<std::string, double> out;
  for (const auto& c : attraction_categories()) out[c.name] = c.hours;
  return out;
}

ParamSet make_builtin(DurationClass c) {
  ParamSet p;
  p.duration_class = c;
  p.category_durations = builtin_category_durations();
  switch (c) {
    case DurationClass::d3:
      p.meals.breakfast = {9.63, 0.90, 1.08, 0.24, 0.21};
      p.meals.lunch = {14.30, 1.11, 1.03, 0.36, 0.10};
      p.meals.dinner = {20.75, 1.19, 1.25, 0.43, -0.20};
      p.attractions = {1.10, 2.01, 1.11, 5, 0, 0.28};
      break;
    case DurationClass::d5:
      p.meals.breakfast = {9.80, 1.08, 1.08, 1.43, 0.63};
      p.meals.lunch = {14.46, 1.10, 1.07, 0.35, 0.04};
      p.meals.dinner = {20.67, 1.32, 1.37, 0.91, -0.18};
      p.attractions = {1.26, 1.61, 1.07, 4, 0, 0.28};
      break;
    default:
      p.meals.breakfast = {9.84, 0.85, 1.34, 0.23, 0.03};
      p.meals.lunch = {14.44, 0.99, 1.07, 0.26, 0.30};
      p.meals.dinner = {20.42, 1.15, 1.66, 1.15, -0.07};
      p.attractions = {1.11, 1.82, 0.90, 4, 0, 0.28};
      break;
  }
  return p;
}

}  // namespace

const ParamSet& builtin_params(DurationClass c) {
  static const ParamSet d3 = make_builtin(DurationClass::d3);
  static const ParamSet d5 = make_builtin(DurationClass::d5);
  static const ParamSet d7 = make_builtin(DurationClass::d7);
  switch (c) {
    case DurationClass::d3: return d3;
    case DurationClass::d5: return d5;
    default: return d7;
  }
}

std::vector<MealObservation> collect_meal_observations(const ItineraryPlan& plan) {
  std::vector<MealObservation> out;
  for (const auto& day : plan.days)
    for (MealKind m : kMealKinds)
      if (const PoIVisit* v = match_meal_visit(day, m))
        out.push_back({m, v->window.midpoint_hours(), v->window.duration_hours()});
  return out;
}

namespace {

struct Moments {
  size_t n = 0;
  double mean_x = 0, mean_y = 0, sx = 0, sy = 0, beta = 0;
};

// sample means, unbiased std devs, Pearson correlation
Moments bivariate_moments(const std::vector<std::pair<double, double>>& xy) {
  Moments m;
  m.n = xy.size();
  if (m.n < 2) return m;
  for (auto [x, y] : xy) {
    m.mean_x += x;
    m.mean_y += y;
  }
  m.mean_x /= static_cast<double>(m.n);
  m.mean_y /= static_cast<double>(m.n);
  double sxx = 0, syy = 0, sxy = 0;
  for (auto [x, y] : xy) {
    sxx += (x - m.mean_x) * (x - m.mean_x);
    syy += (y - m.mean_y) * (y - m.mean_y);
    sxy += (x - m.mean_x) * (y - m.mean_y);
  }
  double denom = static_cast<double>(m.n - 1);
  m.sx = std::sqrt(sxx / denom);
  m.sy = std::sqrt(syy / denom);
  m.beta = (m.sx > 0 && m.sy > 0) ? sxy / (denom * m.sx * m.sy) : 0.0;
  return m;
}

// |OLS slope| of y on x; nullopt when x has no variance
std::optional<double> abs_ols_slope(const std::vector<std::pair<double, double>>& xy) {
  if (xy.size() < 2) return std::nullopt;
  double mean_x = 0, mean_y = 0;
  for (auto [x, y] : xy) {
    mean_x += x;
    mean_y += y;
  }
  mean_x /= static_cast<double>(xy.size());
  mean_y /= static_cast<double>(xy.size());
  double sxx = 0, sxy = 0;
  for (auto [x, y] : xy) {
    sxx += (x - mean_x) * (x - mean_x);
    sxy += (x - mean_x) * (y - mean_y);
  }
  if (sxx == 0) return std::nullopt;
  return std::abs(sxy / sxx);
}

}  // namespace

std::map<DurationClass, MealKindParams> estimate_meal_params(
    const std::vector<ItineraryPlan>& annotated_plans, MealKind meal) {
  std::map<DurationClass, std::vector<std::pair<double, double>>> by_class;
  for (const auto& plan : annotated_plans) {
    if (plan.days.empty()) continue;
    auto cls = duration_class_for_days(static_cast<int>(plan.days.size()));
    for (const auto& day : plan.days)
      if (const PoIVisit* v = match_meal_visit(day, meal))
        by_class[cls].emplace_back(v->window.midpoint_hours(), v->window.duration_hours());
  }

  std::map<DurationClass, MealKindParams> out;
  for (auto& [cls, xy] : by_class) {
    Moments m = bivariate_moments(xy);
    if (m.n < 2) continue;
    if (m.sx == 0 && m.sy == 0) continue;  // all observations identical: no signal
    out[cls] = {m.mean_x, m.mean_y, m.sx, m.sy, m.beta};
  }
  if (out.empty())
    throw InsufficientDataError(std::string("cannot estimate ") + meal_name(meal) +
                                " parameters: no class has two distinct observations");
  return out;
}

std::map<DurationClass, AttractionParams> estimate_attraction_params(
    const std::vector<ItineraryPlan>& annotated_plans, const std::vector<Persona>& personas,
    const CategoryMeanResolver& category_mean) {
  if (annotated_plans.size() != personas.size())
    throw QueryError("annotated plans and personas differ in length");

  struct ClassAccum {
    double day_count_sum[2] = {0, 0};
    size_t day_count_n[2] = {0, 0};
    std::vector<double> deviations;
    // per traveler type: day count -> durations for that day
    std::map<int, std::vector<double>> day_durations[2];
    std::optional<int> n_max, n_min;
  };
  std::map<DurationClass, ClassAccum> by_class;

  for (size_t i = 0; i < annotated_plans.size(); ++i) {
    const auto& plan = annotated_plans[i];
    if (plan.days.empty()) continue;
    TravelerType t = personas[i].traveler();
    int ti = t == TravelerType::laidback ? 0 : 1;
    auto& acc = by_class[duration_class_for_days(static_cast<int>(plan.days.size()))];
    for (const auto& day : plan.days) {
      int n = 0;
      std::vector<double> durations;
      for (const auto& v : day.poi_list) {
        if (v.kind != PoiKind::attraction) continue;
        ++n;
        double d = v.window.duration_hours();
        durations.push_back(d);
        if (auto mu = category_mean(v.name)) acc.deviations.push_back(d - *mu);
      }
      acc.day_count_sum[ti] += n;
      acc.day_count_n[ti] += 1;
      acc.n_max = acc.n_max ? std::max(*acc.n_max, n) : n;
      acc.n_min = acc.n_min ? std::min(*acc.n_min, n) : n;
      if (n > 0) {
        double mean_dur = 0;
        for (double d : durations) mean_dur += d;
        acc.day_durations[ti][n].push_back(mean_dur / n);
      }
    }
  }

  std::map<DurationClass, AttractionParams> out;
  for (auto& [cls, acc] : by_class) {
    AttractionParams p;
    if (acc.day_count_n[0] == 0 || acc.day_count_n[1] == 0)
      continue;  // need both traveler types to place both lambdas
    p.lambda_laidback = acc.day_count_sum[0] / static_cast<double>(acc.day_count_n[0]);
    p.lambda_adventurous = acc.day_count_sum[1] / static_cast<double>(acc.day_count_n[1]);
    if (acc.deviations.size() < 2) continue;
    double mean = 0;
    for (double d : acc.deviations) mean += d;
    mean /= static_cast<double>(acc.deviations.size());
    double ss = 0;
    for (double d : acc.deviations) ss += (d - mean) * (d - mean);
    p.sigma_d = std::sqrt(ss / static_cast<double>(acc.deviations.size() - 1));
    if (p.sigma_d == 0) continue;
    p.n_max = acc.n_max.value_or(0);
    p.n_min = acc.n_min.value_or(0);

    // k per traveler type: regress mean per-day duration on daily count,
    // then weight the |slopes| by observation count
    double k_weighted = 0, k_weight = 0;
    for (int ti = 0; ti < 2; ++ti) {
      std::vector<std::pair<double, double>> points;
      size_t weight = 0;
      for (const auto& [n, day_means] : acc.day_durations[ti])
        for (double m : day_means) {
          points.emplace_back(static_cast<double>(n), m);
          ++weight;
        }
      if (auto slope = abs_ols_slope(points)) {
        k_weighted += *slope * static_cast<double>(weight);
        k_weight += static_cast<double>(weight);
      }
    }
    if (k_weight == 0) continue;
    p.k = k_weighted / k_weight;
    out[cls] = p;
  }
  if (out.empty())
    throw InsufficientDataError(
        "cannot estimate attraction parameters: no class has usable observations");
  return out;
}

/* ---- params.json ---- */

namespace {

nlohmann::json meal_to_json(const MealKindParams& m) {
  return {{"mean_time", m.mean_time},
          {"mean_duration", m.mean_duration},
          {"std_time", m.std_time},
          {"std_duration", m.std_duration},
          {"beta", m.beta}};
}

MealKindParams meal_from_json(const nlohmann::json& j) {
  return {j.at("mean_time").get<double>(), j.at("mean_duration").get<double>(),
          j.at("std_time").get<double>(), j.at("std_duration").get<double>(),
          j.at("beta").get<double>()};
}

std::optional<DurationClass> class_from_label(const std::string& label) {
  for (DurationClass c : kDurationClasses)
    if (label == duration_class_name(c)) return c;
  return std::nullopt;
}

}  // namespace

std::string params_to_json(const std::map<DurationClass, ParamSet>& sets) {
  nlohmann::json doc = nlohmann::json::object();
  for (const auto& [cls, p] : sets) {
    nlohmann::json meals = {{"breakfast", meal_to_json(p.meals.breakfast)},
                            {"lunch", meal_to_json(p.meals.lunch)},
                            {"dinner", meal_to_json(p.meals.dinner)}};
    nlohmann::json attractions = {{"lambda_laidback", p.attractions.lambda_laidback},
                                  {"lambda_adventurous", p.attractions.lambda_adventurous},
                                  {"sigma_d", p.attractions.sigma_d},
                                  {"n_max", p.attractions.n_max},
                                  {"n_min", p.attractions.n_min},
                                  {"k", p.attractions.k}};
    nlohmann::json cats = nlohmann::json::object();
    for (const auto& [name, hours] : p.category_durations) cats[name] = hours;
    doc[duration_class_name(cls)] = {
        {"meals", meals}, {"attractions", attractions}, {"category_durations", cats}};
  }
  return doc.dump(2) + "\n";
}

std::map<DurationClass, ParamSet> params_from_json(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad params file: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("params file must be a JSON object");
  std::map<DurationClass, ParamSet> out;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    auto cls = class_from_label(it.key());
    if (!cls) throw ConfigError("unknown duration class in params file: " + it.key());
    try {
      ParamSet p;
      p.duration_class = *cls;
      const auto& j = it.value();
      const auto& meals = j.at("meals");
      p.meals.breakfast = meal_from_json(meals.at("breakfast"));
      p.meals.lunch = meal_from_json(meals.at("lunch"));
      p.meals.dinner = meal_from_json(meals.at("dinner"));
      const auto& a = j.at("attractions");
      p.attractions.lambda_laidback = a.at("lambda_laidback").get<double>();
      p.attractions.lambda_adventurous = a.at("lambda_adventurous").get<double>();
      p.attractions.sigma_d = a.at("sigma_d").get<double>();
      p.attractions.n_max = a.at("n_max").get<int>();
      p.attractions.n_min = a.at("n_min").get<int>();
      p.attractions.k = a.at("k").get<double>();
      if (j.contains("category_durations"))
        for (auto cit = j.at("category_durations").begin(); cit != j.at("category_durations").end();
             ++cit)
          p.category_durations[cit.key()] = cit.value().get<double>();
      else
        p.category_durations = builtin_params(*cls).category_durations;
      out[*cls] = std::move(p);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("bad params entry '" + it.key() + "': " + e.what());
    }
  }
  return out;
}

void write_params_file(const std::string& path, const std::map<DurationClass, ParamSet>& sets) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << params_to_json(sets);
}

std::map<DurationClass, ParamSet> read_params_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read params file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return params_from_json(ss.str());
}

}  // namespace tripgrade
