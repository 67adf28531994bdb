#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tripgrade/constraints.hpp"
#include "tripgrade/embedding.hpp"
#include "tripgrade/metrics.hpp"
#include "tripgrade/params.hpp"
#include "tripgrade/query.hpp"

namespace tripgrade {

struct RunManifest {
  std::filesystem::path sandbox_root;
  std::filesystem::path queries_file;
  std::filesystem::path plans_dir;
  std::optional<std::filesystem::path> gold_dir;    // enables the ordering score
  std::optional<std::filesystem::path> params_file; // unset -> builtin parameters
  EmbedderSpec embedder;
  CheckConfig check;
  int jobs = 0;  // 0 -> logical cores
  std::filesystem::path output_dir;
};

struct PlanEvaluation {
  std::string id;
  std::string category;  // "3-day" | "5-day" | "7-day"
  ConstraintReport constraints;
  ScoreReport scores;
  double cost = 0.0;    // lenient cost, what the Budget check saw
  double budget = 0.0;
};

struct RunResult {
  std::vector<PlanEvaluation> evaluations;               // sorted by plan id
  std::map<std::string, RateSummary> rates;              // per category plus "all"
  std::map<std::string, size_t> plans_per_category;
  bool used_fallback = false;
  std::string summary;  // the stdout table
};

// Evaluates every query's plan file; when write_output is set, emits
// scores.csv, rates.csv, params.json and reports/<id>.json under output_dir.
RunResult evaluate_plans(const RunManifest& manifest, bool write_output);
inline RunResult run_evaluate(const RunManifest& manifest) {
  return evaluate_plans(manifest, true);
}

// column order of the five metric means in comparison rows
extern const std::array<const char*, 5> kMetricColumns;

struct ComparisonRow {
  std::string category;
  size_t plans = 0;                                  // intersection size in class
  std::array<std::optional<double>, 5> mean_a, mean_b;
  std::array<int, 5> marker{};                       // -1 A better, +1 B better, 0 tie
};

struct ComparisonTable {
  std::vector<std::string> ids;  // delivered by both runs, sorted
  std::vector<ComparisonRow> rows;
};

// Means over the plans delivered by both runs only. Throws QueryMismatchError
// when the two manifests answer different query sets.
ComparisonTable run_compare(const RunManifest& a, const RunManifest& b);
std::string format_comparison(const ComparisonTable& table);

// Re-estimates meal and attraction parameters from annotated plans named
// <id>.txt after the queries file's records; personas come from the same
// records, category means from the sandbox. Writes a params.json compatible
// with --params. Classes with too little data are left out; if every class
// is, throws InsufficientDataError.
std::map<DurationClass, ParamSet> run_estimate(const std::filesystem::path& plans_dir,
                                               const std::filesystem::path& queries_file,
                                               const std::filesystem::path& sandbox_root,
                                               const std::filesystem::path& out_file);

}  // namespace tripgrade
