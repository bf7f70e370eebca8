#include <algorithm>
#include <cmath>

#include "gridmender/validate.hpp"

namespace gridmender::validate {

using encode::nm;
using encode::nm2;
using encode::Schedule;
using scenario::MobileKind;
using scenario::PipeKind;
using scenario::Scenario;
namespace fam = encode::fam;

double recompute_objective(const Scenario& s, const Schedule& sched) {
  double obj = 0.0;
  for (int t = 0; t < s.steps(); ++t) {
    obj += s.weights.zeta1 * sched.supplied_power[t];
    obj += s.weights.zeta2 * sched.supplied_gas[t];
  }
  for (const auto& p : s.pipelines) {
    if (p.kind != PipeKind::Passive) continue;
    for (int t = 1; t <= s.steps(); ++t) obj -= s.weights.o1 * sched.at(nm(fam::wgap, p.id, t));
  }
  // traveling slots, transfer enables, and fuel burn summed over the registry
  for (const auto& [name, value] : sched.values) {
    if (name.starts_with("moving.")) obj -= s.weights.o2 * value;
    if (name.starts_with("xen.")) obj -= s.weights.o3 * value;
    if (name.starts_with("cgas.") || name.starts_with("cdsl.")) obj -= s.weights.o4 * value;
  }
  return obj;
}

ValidationReport audit(const Scenario& s, const Schedule& sched, const milp::Solution& sol) {
  ValidationReport report;
  const auto& tol = s.tolerances;

  auto merge = [&](std::vector<Violation> v) {
    report.findings.insert(report.findings.end(), v.begin(), v.end());
  };
  merge(check_power(s, sched, tol));
  merge(check_gas(s, sched, tol));
  merge(check_logistics(s, sched, tol));
  merge(check_dr(s, sched, tol));

  // relaxation tightness: worst exact residual per pipe and the slack total
  for (const auto& p : s.pipelines) {
    if (p.kind != PipeKind::Passive) continue;
    double worst = 0.0;
    for (int t = 1; t <= s.steps(); ++t) {
      const double flow = sched.at(nm(fam::gf, p.id, t));
      const double d = sched.at(nm(fam::pr2, p.from, t)) - sched.at(nm(fam::pr2, p.to, t));
      const double sign = flow > 0.0 ? 1.0 : (flow < 0.0 ? -1.0 : 0.0);
      worst = std::max(worst, std::fabs(d - sign * p.weymouth_k * flow * flow));
      report.relaxation.sum_gap_slack += sched.at(nm(fam::wgap, p.id, t));
    }
    report.relaxation.max_weymouth_residual[p.id] = worst;
    report.relaxation.worst_weymouth_residual =
        std::max(report.relaxation.worst_weymouth_residual, worst);
  }

  report.recomputed_objective = recompute_objective(s, sched);
  report.solver_objective = sol.objective;
  const double gap = std::fabs(report.recomputed_objective - report.solver_objective);
  const double limit = 10.0 * tol.linear_abs * std::max(1.0, std::fabs(report.solver_objective));
  if (gap > limit) {
    report.findings.push_back({"objective-mismatch", "", 0, gap, limit,
                               "recomputed objective drifts from the solver's"});
  }

  std::sort(report.findings.begin(), report.findings.end(),
            [](const Violation& a, const Violation& b) {
              if (a.family != b.family) return a.family < b.family;
              if (a.entity != b.entity) return a.entity < b.entity;
              return a.ts < b.ts;
            });
  report.pass = report.findings.empty();
  return report;
}

const std::map<std::string, std::string>& covered_row_families() {
  static const std::map<std::string, std::string> table = {
      {"pw_win_lo", "logistics/fuel-curve"},   {"pw_win_hi", "logistics/fuel-curve"},
      {"pw_eq_hi", "logistics/fuel-curve"},    {"pw_eq_lo", "logistics/fuel-curve"},
      {"pw_sum_g", "logistics/fuel-curve"},    {"pw_sum_d", "logistics/fuel-curve"},
      {"dual_mode", "logistics/dual-mode"},    {"dual_cap_pg", "logistics/fuel-curve"},
      {"dual_cap_cg", "logistics/fuel-curve"}, {"dual_cap_pd", "logistics/fuel-curve"},
      {"dual_cap_cd", "logistics/fuel-curve"}, {"dual_sw_g", "logistics/switch-budget"},
      {"dual_sw_d", "logistics/switch-budget"},{"dual_swcap", "logistics/switch-budget"},
      {"dual_split", "logistics/dual-split"},  {"led_tank", "logistics/ledger"},
      {"led_res", "logistics/ledger"},         {"led_onsite", "logistics/ledger"},
      {"led_ngds", "logistics/ledger"},        {"xfer_gate", "logistics/transfer"},
      {"xfer_out", "logistics/transfer"},      {"xfer_in", "logistics/transfer"},
      {"stgx_one", "gas/store-exclusivity"},   {"stgx_inj", "gas/store-flow-band"},
      {"stgx_wd", "gas/store-flow-band"},      {"stgx_net", "gas/store-net"},
      {"draw_cap", "logistics/draw-cap"},      {"draw_all", "logistics/draw-cap"},
      {"soc_rec", "power/storage-soc"},        {"ess_one", "power/storage-exclusivity"},
      {"ess_ch", "power/storage-power-band"},  {"ess_dch", "power/storage-power-band"},
      {"ess_split", "power/storage-split"},    {"gcap", "power/unit-capacity"},
      {"dr_gate_p", "dr/gate"},                {"dr_gate_n", "dr/gate"},
      {"dr_win_p", "dr/window"},               {"dr_win_n", "dr/window"},
      {"dr_band_p_hi", "dr/band"},             {"dr_band_p_lo", "dr/band"},
      {"dr_band_q", "dr/band"},                {"dr_band_f_hi", "dr/band"},
      {"dr_band_f_lo", "dr/band"},             {"dr_hcap", "dr/integrated-cap"},
      {"dr_agg_p", "dr/aggregation"},          {"dr_agg_q", "dr/aggregation"},
      {"dr_agg_f", "dr/aggregation"},          {"rep_one", "logistics/repair"},
      {"rep_count", "logistics/repair"},       {"rep_eff", "logistics/repair"},
      {"rep_stay", "logistics/repair"},        {"rep_done", "logistics/repair"},
      {"rep_mono", "logistics/repair"},        {"mob", "logistics/mobility"},
      {"pbal", "power/active-balance"},        {"qbal", "power/reactive-balance"},
      {"vdrop_eq", "power/voltage-drop"},      {"vdrop_lo", "power/voltage-drop"},
      {"vdrop_hi", "power/voltage-drop"},      {"vcap", "power/branch-capacity"},
      {"pick_mono", "power/pickup-monotonicity"},
      {"gbal", "gas/balance"},                 {"wey_dir_hi", "gas/weymouth"},
      {"wey_dir_lo", "gas/weymouth"},          {"wey_psign_hi", "gas/weymouth"},
      {"wey_psign_lo", "gas/weymouth"},        {"wey_tan_f", "gas/weymouth"},
      {"wey_tan_r", "gas/weymouth"},           {"wey_wsum", "gas/weymouth"},
      {"wey_wwin_flo", "gas/weymouth"},        {"wey_wwin_fhi", "gas/weymouth"},
      {"wey_wwin_rlo", "gas/weymouth"},        {"wey_wwin_rhi", "gas/weymouth"},
      {"wey_gap_f", "gas/weymouth"},           {"wey_gap_r", "gas/weymouth"},
      {"comp_ratio_lo", "gas/compressor-ratio"},
      {"comp_ratio_hi", "gas/compressor-ratio"},
      {"comp_pow_hi", "gas/compressor-power"}, {"comp_pow_lo", "gas/compressor-power"},
      {"comp_byp_hi", "gas/compressor-bypass"},{"comp_byp_lo", "gas/compressor-bypass"},
      {"comp_on", "gas/compressor-power"},     {"comp_link", "gas/compressor-supply"},
      {"stg_pow", "gas/store-power"},          {"gpick_mono", "gas/pickup-monotonicity"},
  };
  return table;
}

}  // namespace gridmender::validate
