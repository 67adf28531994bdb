#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tripgrade/cli_report.hpp"
#include "tripgrade/datagen.hpp"
#include "tripgrade/errors.hpp"

namespace {

struct CommonArgs {
  std::string sandbox, queries, gold, params, endpoint, out;
  bool fallback = false;
  int checkin = 30, checkout = 30, jobs = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool out_required) {
  cmd->add_option("--sandbox", args.sandbox, "sandbox CSV directory")->required();
  cmd->add_option("--queries", args.queries, "queries.jsonl file")->required();
  cmd->add_option("--gold", args.gold, "reference plans, enables the ordering score");
  cmd->add_option("--params", args.params, "params.json (default: built-in parameters)");
  cmd->add_option("--embed-endpoint", args.endpoint, "remote embedding service URL")
      ->envname("TRIPGRADE_EMBED_ENDPOINT");
  cmd->add_flag("--embed-fallback", args.fallback,
                "use baseline embeddings when the service is unreachable");
  cmd->add_option("--checkin-gap", args.checkin, "minutes from landing to the first stay");
  cmd->add_option("--checkout-gap", args.checkout,
                  "minutes from the last activity to departure");
  cmd->add_option("--jobs", args.jobs, "evaluation threads (default: logical cores)");
  auto* out = cmd->add_option("--out", args.out, "output directory");
  if (out_required) out->required();
}

tripgrade::RunManifest to_manifest(const CommonArgs& args, const std::string& plans_dir) {
  tripgrade::RunManifest m;
  m.sandbox_root = args.sandbox;
  m.queries_file = args.queries;
  m.plans_dir = plans_dir;
  if (!args.gold.empty()) m.gold_dir = args.gold;
  if (!args.params.empty()) m.params_file = args.params;
  if (!args.endpoint.empty()) m.embedder.endpoint = args.endpoint;
  m.embedder.fallback = args.fallback;
  m.check.checkin_gap_min = args.checkin;
  m.check.checkout_gap_min = args.checkout;
  m.jobs = args.jobs;
  m.output_dir = args.out;
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tripgrade: constraint checks and soft metrics for travel plans"};
  app.require_subcommand(1);

  CommonArgs eval_args;
  std::string eval_plans;
  auto* evaluate = app.add_subcommand("evaluate", "score one directory of plans");
  evaluate->add_option("--plans", eval_plans, "directory of <query_id>.txt plans")->required();
  add_common(evaluate, eval_args, true);

  CommonArgs cmp_args;
  std::string cmp_plans_a, cmp_plans_b;
  auto* compare = app.add_subcommand("compare", "compare two plan directories");
  compare->add_option("plans_a", cmp_plans_a, "first run's plan directory")->required();
  compare->add_option("plans_b", cmp_plans_b, "second run's plan directory")->required();
  add_common(compare, cmp_args, false);

  std::string est_plans, est_queries, est_sandbox, est_out;
  auto* estimate = app.add_subcommand("estimate", "fit parameters from annotated plans");
  estimate->add_option("--plans", est_plans, "directory of annotated <query_id>.txt plans")
      ->required();
  estimate->add_option("--queries", est_queries, "queries.jsonl with the matching personas")
      ->required();
  estimate->add_option("--sandbox", est_sandbox, "sandbox CSV directory")->required();
  estimate->add_option("--out", est_out, "output directory for params.json")->required();

  tripgrade::GenSpec spec;
  std::string gen_out;
  int gen_queries = 10;
  auto* datagen = app.add_subcommand("datagen", "emit a synthetic sandbox with gold plans");
  datagen->add_option("--out", gen_out, "output directory")->required();
  datagen->add_option("--seed", spec.seed, "generator seed");
  datagen->add_option("--days", spec.days, "trip length: 3, 5 or 7");
  datagen->add_option("--count", gen_queries, "number of queries and gold plans");
  datagen->add_option("--cities", spec.n_cities, "number of cities");
  datagen->add_option("--restaurants-per-city", spec.n_restaurants_per_city, "");
  datagen->add_option("--attractions-per-city", spec.n_attractions_per_city, "");
  datagen->add_option("--accommodations-per-city", spec.n_accommodations_per_city, "");
  datagen->add_option("--events-per-city", spec.n_events_per_city, "");

  CLI11_PARSE(app, argc, argv);

  try {
    if (evaluate->parsed()) {
      tripgrade::RunResult result = tripgrade::run_evaluate(to_manifest(eval_args, eval_plans));
      std::cout << result.summary;
      std::cout << "wrote " << eval_args.out << "/scores.csv, rates.csv, params.json and "
                << result.evaluations.size() << " reports\n";
    } else if (compare->parsed()) {
      tripgrade::ComparisonTable table = tripgrade::run_compare(
          to_manifest(cmp_args, cmp_plans_a), to_manifest(cmp_args, cmp_plans_b));
      std::cout << tripgrade::format_comparison(table);
    } else if (estimate->parsed()) {
      std::filesystem::create_directories(est_out);
      auto sets = tripgrade::run_estimate(est_plans, est_queries, est_sandbox,
                                          std::filesystem::path(est_out) / "params.json");
      std::cout << "estimated " << sets.size() << " duration class(es) into " << est_out
                << "/params.json\n";
    } else if (datagen->parsed()) {
      tripgrade::DatagenManifest m = tripgrade::write_generated(gen_out, spec, gen_queries);
      std::cout << "sandbox: " << m.counts.cities << " cities, " << m.counts.flights
                << " flights, " << m.counts.restaurants << " restaurants, "
                << m.counts.attractions << " attractions, " << m.counts.accommodations
                << " accommodations\n"
                << "queries: " << m.query_ids.size() << " with gold plans under " << gen_out
                << "/gold\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "tripgrade: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
