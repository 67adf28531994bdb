#pragma once

#include <string>
#include <vector>

#include "tripgrade/query.hpp"
#include "tripgrade/resolution.hpp"

namespace tripgrade {

enum class ConstraintId {
  // commonsense
  within_sandbox,
  complete_information,
  sufficient_meal_gaps,
  valid_poi_list,
  diverse_events,
  diverse_restaurants,
  diverse_attractions,
  within_current_city,
  reasonable_city_route,
  non_conflicting_transportation,
  // hard
  budget,
  room_rule,
  room_type,
  cuisine,
  transportation,
  event_types,
  attraction_types,
};

// stable snake_case identifier used in reports and CSV output
const char* constraint_id_name(ConstraintId id);
// display form, e.g. "Within Sandbox"
const char* constraint_label(ConstraintId id);

struct ConstraintResult {
  ConstraintId id;
  bool passed = true;
  bool applicable = true;  // hard constraints a query never asked for stay true/pass
  std::string detail;      // nonempty exactly when passed = false
};

struct ConstraintReport {
  bool delivered = false;
  std::string parse_error;  // why delivery failed, empty otherwise
  std::vector<ConstraintResult> commonsense;
  std::vector<ConstraintResult> hard;

  bool commonsense_pass() const;
  bool hard_pass() const;  // every applicable hard constraint passed
  bool final_pass() const { return delivered && commonsense_pass() && hard_pass(); }
  const ConstraintResult* find(ConstraintId id) const;
};

struct CheckConfig {
  int checkin_gap_min = 30;   // flight arrival -> first stay
  int checkout_gap_min = 30;  // last window end -> flight departure
};

std::vector<ConstraintResult> check_commonsense(const ResolvedPlan& plan, const Query& query,
                                                const CheckConfig& config = {});
std::vector<ConstraintResult> check_commonsense(const ItineraryPlan& plan, const Query& query,
                                                const Sandbox& sandbox,
                                                const CheckConfig& config = {});

std::vector<ConstraintResult> check_hard(const ResolvedPlan& plan, const Query& query);
std::vector<ConstraintResult> check_hard(const ItineraryPlan& plan, const Query& query,
                                         const Sandbox& sandbox);

// strict: throws NotFoundError when a priced entity cannot be resolved
double compute_cost(const ItineraryPlan& plan, const Query& query, const Sandbox& sandbox);
// lenient: unresolvable entities contribute nothing (used by the Budget check)
double compute_cost_lenient(const ResolvedPlan& plan, const Query& query);

struct RateSummary {
  double delivery_rate = 0;
  double cpr_micro = 0;
  double cpr_macro = 0;
  double hcpr_micro = 0;
  double hcpr_macro = 0;
  double final_pass_rate = 0;
};

// micro rates count individual checks over delivered plans; macro rates count
// fully-passing plans over all plans (an undelivered plan fails). 0/0 = 0.
RateSummary aggregate_rates(const std::vector<ConstraintReport>& reports);

}  // namespace tripgrade
