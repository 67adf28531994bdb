#include "tripgrade/cli_report.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "tripgrade/csv.hpp"
#include "tripgrade/errors.hpp"
#include "tripgrade/plan_parser.hpp"
#include "tripgrade/resolution.hpp"
#include "tripgrade/sandbox.hpp"
#include "tripgrade/text.hpp"

namespace tripgrade {

namespace {

std::optional<std::string> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string metric_cell(const std::optional<double>& v) {
  return v ? format_compact(*v, 9) : std::string();
}

nlohmann::json metric_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json results_json(const std::vector<ConstraintResult>& results) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : results) {
    nlohmann::json j{{"id", constraint_id_name(r.id)},
                     {"label", constraint_label(r.id)},
                     {"passed", r.passed}};
    if (!r.applicable) j["applicable"] = false;
    if (!r.detail.empty()) j["detail"] = r.detail;
    arr.push_back(std::move(j));
  }
  return arr;
}

struct WorkItem {
  const QueryRecord* record = nullptr;
  std::optional<std::string> plan_text;
  std::optional<ItineraryPlan> gold;
};

PlanEvaluation evaluate_one(const WorkItem& item, const Sandbox& sandbox,
                            const ParamSet& params, Embedder& embedder,
                            const CheckConfig& config) {
  PlanEvaluation ev;
  ev.id = item.record->id;
  ev.category = duration_class_name(item.record->query.duration_class());
  ev.budget = item.record->query.budget;

  if (!item.plan_text) {
    ev.constraints.parse_error = "plan file not found";
    return ev;
  }

  ItineraryPlan plan;
  try {
    plan = parse_plan(*item.plan_text);
  } catch (const ParseError& e) {
    ev.constraints.parse_error = e.what();
    return ev;
  }

  ev.constraints.delivered = true;
  try {
    ResolvedPlan resolved = resolve_plan(plan, sandbox, item.record->query.dates);
    ev.constraints.commonsense = check_commonsense(resolved, item.record->query, config);
    ev.constraints.hard = check_hard(resolved, item.record->query);
    ev.cost = compute_cost_lenient(resolved, item.record->query);
    const ItineraryPlan* reference = item.gold ? &*item.gold : nullptr;
    ev.scores = evaluate_all(resolved, item.record->persona, reference, params, embedder);
  } catch (const std::exception& e) {
    // a plan must never take the whole run down; surface the problem instead
    ev.constraints.delivered = false;
    ev.constraints.parse_error = std::string("evaluation failed: ") + e.what();
    ev.constraints.commonsense.clear();
    ev.constraints.hard.clear();
  }
  return ev;
}

std::string rate_cell(double v) { return format_compact(v, 9); }

std::string build_summary(const RunResult& result) {
  std::ostringstream out;
  out << "category   plans  delivery  cpr_micro  cpr_macro  hcpr_micro  hcpr_macro  final\n";
  for (const auto& [cat, rate] : result.rates) {
    char line[160];
    std::snprintf(line, sizeof line, "%-9s %6zu  %8.4f  %9.4f  %9.4f  %10.4f  %10.4f  %5.4f\n",
                  cat.c_str(), result.plans_per_category.at(cat), rate.delivery_rate,
                  rate.cpr_micro, rate.cpr_macro, rate.hcpr_micro, rate.hcpr_macro,
                  rate.final_pass_rate);
    out << line;
  }
  if (result.used_fallback)
    out << "note: embedding service unreachable, baseline embeddings were used\n";
  return out.str();
}

}  // namespace

const std::array<const char*, 5> kMetricColumns = {"t_meal", "t_attrac", "s_spatial",
                                                   "s_persona", "s_ord"};

RunResult evaluate_plans(const RunManifest& manifest, bool write_output) {
  namespace fs = std::filesystem;

  std::vector<QueryRecord> records = read_queries_jsonl(manifest.queries_file.string());
  if (records.empty())
    throw EmptyInputError("queries file has no records: " + manifest.queries_file.string());

  bool any_plan_file = false;
  if (fs::is_directory(manifest.plans_dir))
    for (const auto& entry : fs::directory_iterator(manifest.plans_dir))
      if (entry.is_regular_file() && entry.path().extension() == ".txt") {
        any_plan_file = true;
        break;
      }
  if (!any_plan_file) throw ConfigError("no plans found in " + manifest.plans_dir.string());

  Sandbox sandbox = Sandbox::load(manifest.sandbox_root);

  std::map<DurationClass, ParamSet> params;
  if (manifest.params_file) {
    params = read_params_file(manifest.params_file->string());
  } else {
    for (DurationClass c : kDurationClasses) params[c] = builtin_params(c);
  }
  for (const auto& rec : records)
    if (!params.count(rec.query.duration_class()))
      throw ConfigError(std::string("parameter file lacks the ") +
                        duration_class_name(rec.query.duration_class()) + " class");

  std::vector<WorkItem> items;
  items.reserve(records.size());
  for (const auto& rec : records) {
    WorkItem item;
    item.record = &rec;
    item.plan_text = read_file(manifest.plans_dir / (rec.id + ".txt"));
    if (manifest.gold_dir)
      if (auto gold_text = read_file(*manifest.gold_dir / (rec.id + ".txt")))
        item.gold = parse_plan(*gold_text);  // a broken gold file is a caller bug
    items.push_back(std::move(item));
  }

  std::unique_ptr<Embedder> embedder = make_embedder(manifest.embedder);

  unsigned hw = std::thread::hardware_concurrency();
  size_t jobs = manifest.jobs > 0 ? static_cast<size_t>(manifest.jobs)
                                  : static_cast<size_t>(hw ? hw : 1);
  jobs = std::min(jobs, items.size());

  std::vector<PlanEvaluation> evaluations(items.size());
  std::atomic<size_t> cursor{0};
  auto drain = [&] {
    for (;;) {
      size_t i = cursor.fetch_add(1);
      if (i >= items.size()) return;
      const ParamSet& p = params.at(items[i].record->query.duration_class());
      evaluations[i] = evaluate_one(items[i], sandbox, p, *embedder, manifest.check);
    }
  };
  if (jobs <= 1) {
    drain();
  } else {
    std::vector<std::thread> pool;
    for (size_t j = 0; j < jobs; ++j) pool.emplace_back(drain);
    for (auto& t : pool) t.join();
  }

  std::sort(evaluations.begin(), evaluations.end(),
            [](const PlanEvaluation& a, const PlanEvaluation& b) { return a.id < b.id; });

  RunResult result;
  result.evaluations = std::move(evaluations);
  if (auto* fb = dynamic_cast<FallbackEmbedder*>(embedder.get()))
    result.used_fallback = fb->fell_back();

  std::map<std::string, std::vector<ConstraintReport>> grouped;
  for (const auto& ev : result.evaluations) {
    grouped[ev.category].push_back(ev.constraints);
    grouped["all"].push_back(ev.constraints);
    result.plans_per_category[ev.category]++;
  }
  result.plans_per_category["all"] = result.evaluations.size();
  for (const auto& [cat, reports] : grouped) result.rates[cat] = aggregate_rates(reports);
  result.summary = build_summary(result);

  if (!write_output) return result;

  fs::create_directories(manifest.output_dir / "reports");

  {
    std::vector<std::vector<std::string>> rows;
    for (const auto& ev : result.evaluations)
      rows.push_back({ev.id, ev.category, ev.constraints.delivered ? "1" : "0",
                      metric_cell(ev.scores.t_meal), metric_cell(ev.scores.t_attrac),
                      metric_cell(ev.scores.s_spatial), metric_cell(ev.scores.s_persona),
                      metric_cell(ev.scores.s_ord)});
    write_csv_file(manifest.output_dir / "scores.csv",
                   {"plan_id", "category", "delivered", "t_meal", "t_attrac", "s_spatial",
                    "s_persona", "s_ord"},
                   rows);
  }
  {
    std::vector<std::vector<std::string>> rows;
    for (const auto& [cat, rate] : result.rates)
      rows.push_back({cat, rate_cell(rate.delivery_rate), rate_cell(rate.cpr_micro),
                      rate_cell(rate.cpr_macro), rate_cell(rate.hcpr_micro),
                      rate_cell(rate.hcpr_macro), rate_cell(rate.final_pass_rate)});
    write_csv_file(manifest.output_dir / "rates.csv",
                   {"category", "delivery_rate", "cpr_micro", "cpr_macro", "hcpr_micro",
                    "hcpr_macro", "final_pass_rate"},
                   rows);
  }

  write_params_file((manifest.output_dir / "params.json").string(), params);

  for (const auto& ev : result.evaluations) {
    nlohmann::json j{
        {"id", ev.id},
        {"category", ev.category},
        {"delivered", ev.constraints.delivered},
        {"cost", ev.cost},
        {"budget", ev.budget},
        {"scores",
         {{"t_meal", metric_json(ev.scores.t_meal)},
          {"t_attrac", metric_json(ev.scores.t_attrac)},
          {"s_spatial", metric_json(ev.scores.s_spatial)},
          {"s_persona", metric_json(ev.scores.s_persona)},
          {"s_ord", metric_json(ev.scores.s_ord)}}},
        {"commonsense", results_json(ev.constraints.commonsense)},
        {"hard", results_json(ev.constraints.hard)},
    };
    if (!ev.constraints.parse_error.empty()) j["parse_error"] = ev.constraints.parse_error;
    j["commonsense_pass"] = ev.constraints.commonsense_pass();
    j["hard_pass"] = ev.constraints.hard_pass();
    j["final_pass"] = ev.constraints.final_pass();

    std::ofstream out(manifest.output_dir / "reports" / (ev.id + ".json"), std::ios::binary);
    if (!out)
      throw ConfigError("cannot write report for " + ev.id + " under " +
                        (manifest.output_dir / "reports").string());
    out << j.dump(2) << "\n";
  }

  return result;
}

ComparisonTable run_compare(const RunManifest& a, const RunManifest& b) {
  {
    auto qa = read_queries_jsonl(a.queries_file.string());
    auto qb = read_queries_jsonl(b.queries_file.string());
    bool same = qa.size() == qb.size();
    for (size_t i = 0; same && i < qa.size(); ++i) same = qa[i].id == qb[i].id;
    if (!same)
      throw QueryMismatchError("the two runs answer different query sets (" +
                               a.queries_file.string() + " vs " + b.queries_file.string() + ")");
  }

  RunResult ra = evaluate_plans(a, false);
  RunResult rb = evaluate_plans(b, false);

  std::map<std::string, const PlanEvaluation*> by_id_b;
  for (const auto& ev : rb.evaluations) by_id_b[ev.id] = &ev;

  struct Pair {
    const PlanEvaluation* a;
    const PlanEvaluation* b;
  };
  std::map<std::string, std::vector<Pair>> classes;  // category -> pairs, plus "all"
  ComparisonTable table;
  for (const auto& ev : ra.evaluations) {
    if (!ev.constraints.delivered) continue;
    auto it = by_id_b.find(ev.id);
    if (it == by_id_b.end() || !it->second->constraints.delivered) continue;
    table.ids.push_back(ev.id);
    classes[ev.category].push_back({&ev, it->second});
    classes["all"].push_back({&ev, it->second});
  }

  auto pick = [](const ScoreReport& s, size_t m) -> const std::optional<double>& {
    switch (m) {
      case 0: return s.t_meal;
      case 1: return s.t_attrac;
      case 2: return s.s_spatial;
      case 3: return s.s_persona;
      default: return s.s_ord;
    }
  };

  for (const auto& [cat, pairs] : classes) {
    ComparisonRow row;
    row.category = cat;
    row.plans = pairs.size();
    for (size_t m = 0; m < kMetricColumns.size(); ++m) {
      double sum_a = 0, sum_b = 0;
      size_t n = 0;
      for (const Pair& p : pairs) {
        const auto& va = pick(p.a->scores, m);
        const auto& vb = pick(p.b->scores, m);
        if (!va || !vb) continue;  // comparable only where both runs scored it
        sum_a += *va;
        sum_b += *vb;
        ++n;
      }
      if (n == 0) continue;
      row.mean_a[m] = sum_a / static_cast<double>(n);
      row.mean_b[m] = sum_b / static_cast<double>(n);
      double diff = *row.mean_a[m] - *row.mean_b[m];
      row.marker[m] = diff > 1e-9 ? -1 : diff < -1e-9 ? 1 : 0;
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string format_comparison(const ComparisonTable& table) {
  std::ostringstream out;
  out << "intersection: " << table.ids.size() << " plans delivered by both runs\n";
  for (const auto& row : table.rows) {
    out << row.category << " (" << row.plans << " plans)\n";
    for (size_t m = 0; m < kMetricColumns.size(); ++m) {
      if (!row.mean_a[m]) continue;
      char line[120];
      std::snprintf(line, sizeof line, "  %-10s %12.6f%s %12.6f%s\n", kMetricColumns[m],
                    *row.mean_a[m], row.marker[m] < 0 ? " *" : "  ", *row.mean_b[m],
                    row.marker[m] > 0 ? " *" : "  ");
      out << line;
    }
  }
  return out.str();
}

std::map<DurationClass, ParamSet> run_estimate(const std::filesystem::path& plans_dir,
                                               const std::filesystem::path& queries_file,
                                               const std::filesystem::path& sandbox_root,
                                               const std::filesystem::path& out_file) {
  std::vector<QueryRecord> records = read_queries_jsonl(queries_file.string());
  if (records.empty())
    throw EmptyInputError("queries file has no records: " + queries_file.string());

  Sandbox sandbox = Sandbox::load(sandbox_root);

  std::vector<ItineraryPlan> plans;
  std::vector<Persona> personas;
  for (const auto& rec : records) {
    auto text = read_file(plans_dir / (rec.id + ".txt"));
    if (!text) continue;
    try {
      plans.push_back(parse_plan(*text));
    } catch (const ParseError&) {
      continue;  // estimation only wants plans it can read
    }
    personas.push_back(rec.persona);
  }
  if (plans.size() < 2)
    throw InsufficientDataError("need at least two readable annotated plans, found " +
                                std::to_string(plans.size()));

  CategoryMeanResolver resolver = [&sandbox](const std::string& name) -> std::optional<double> {
    auto cities = sandbox.cities_with_poi_of(PoiKind::attraction, name);
    if (cities.empty()) return std::nullopt;
    auto rec = sandbox.find_poi_of(PoiKind::attraction, name, cities.front());
    if (!rec || !rec->attraction || rec->attraction->categories.empty()) return std::nullopt;
    double sum = 0;
    for (const auto& c : rec->attraction->categories) sum += category_hours(c).value_or(0.0);
    return sum / static_cast<double>(rec->attraction->categories.size());
  };

  std::map<DurationClass, MealParams> meals;
  std::map<DurationClass, int> meal_kinds_seen;
  for (MealKind kind : kMealKinds) {
    std::map<DurationClass, MealKindParams> fitted;
    try {
      fitted = estimate_meal_params(plans, kind);
    } catch (const InsufficientDataError&) {
      continue;
    }
    for (const auto& [cls, p] : fitted) {
      meals[cls].of(kind) = p;
      meal_kinds_seen[cls]++;
    }
  }

  std::map<DurationClass, AttractionParams> attractions;
  try {
    attractions = estimate_attraction_params(plans, personas, resolver);
  } catch (const InsufficientDataError&) {
    // leave empty; the class filter below decides what survives
  }

  std::map<DurationClass, ParamSet> out;
  for (const auto& [cls, count] : meal_kinds_seen) {
    if (count != 3 || !attractions.count(cls)) continue;  // a usable class has everything
    ParamSet set;
    set.duration_class = cls;
    set.meals = meals[cls];
    set.attractions = attractions[cls];
    for (const auto& c : attraction_categories()) set.category_durations[c.name] = c.hours;
    out[cls] = std::move(set);
  }
  if (out.empty())
    throw InsufficientDataError(
        "no duration class had enough annotated meals and attractions to estimate");

  write_params_file(out_file.string(), out);
  return out;
}

}  // namespace tripgrade
