#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "gridmender/encode.hpp"
#include "gridmender/milp.hpp"
#include "gridmender/scenario.hpp"

namespace gridmender::validate {

using Tolerances = scenario::ToleranceConfig;

struct Violation {
  std::string family;  // check family, e.g. "active-balance"
  std::string entity;
  int ts = 0;  // 1-based, 0 when not slot-specific
  double residual = 0.0;
  double limit = 0.0;
  std::string note;
};

struct RelaxationAudit {
  std::map<std::string, double> max_weymouth_residual;  // per passive pipeline
  double worst_weymouth_residual = 0.0;
  double sum_gap_slack = 0.0;
};

struct ValidationReport {
  std::vector<Violation> findings;
  RelaxationAudit relaxation;
  double recomputed_objective = 0.0;
  double solver_objective = 0.0;
  bool pass = false;

  nlohmann::json to_json() const;
  std::string table() const;  // human-readable summary
};

// The validator re-evaluates the original per-slot physics and logic from
// Scenario + Schedule directly; it shares no emission code with the
// formulation. Checks are pure and findings come back order-normalized.
std::vector<Violation> check_power(const scenario::Scenario& s, const encode::Schedule& sched,
                                   const Tolerances& tol);
std::vector<Violation> check_gas(const scenario::Scenario& s, const encode::Schedule& sched,
                                 const Tolerances& tol);
std::vector<Violation> check_logistics(const scenario::Scenario& s, const encode::Schedule& sched,
                                       const Tolerances& tol);
std::vector<Violation> check_dr(const scenario::Scenario& s, const encode::Schedule& sched,
                                const Tolerances& tol);

/// Runs every check, recomputes the objective, and audits relaxation
/// tightness (per-pipe worst exact residual and total gap slack).
ValidationReport audit(const scenario::Scenario& s, const encode::Schedule& sched,
                       const milp::Solution& sol);

/// Objective recomputed from the schedule alone.
double recompute_objective(const scenario::Scenario& s, const encode::Schedule& sched);

/// One slot of a mobile's itinerary.
struct MobileState {
  bool parked = false;
  int site = -1;  // index into the site list used by the caller
};

/// Direct travel-time legality of a parked/traveling path: initial parking,
/// arrival linkage, destination persistence, and no re-parking sooner than
/// the travel time.
bool mobility_path_ok(const std::vector<std::vector<int>>& tau, int initial_site,
                      std::span<const MobileState> path);

/// Direct activation-window legality of a DR pattern: total duration cap,
/// per-event duration cap, minimum event duration and minimum gap (events
/// or gaps truncated by the horizon are exempt from the minimums).
bool dr_pattern_ok(std::span<const int> pattern, int total_max, int du_max, int du_min,
                   int int_min);

/// Row-name prefixes of the formulation covered by each check family; used
/// to enforce the formulation-to-validator completeness mapping.
const std::map<std::string, std::string>& covered_row_families();

}  // namespace gridmender::validate
