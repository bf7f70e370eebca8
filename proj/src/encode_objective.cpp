#include "encode_util.hpp"

namespace gridmender::encode {

using scenario::MobileKind;
using scenario::PipeKind;
using scenario::Scenario;

void build_objective(const Scenario& s, milp::Model& m) {
  const auto& w = s.weights;
  const double dt = s.dt();

  // supplied electricity and gas, weighted, net of dispatched reductions
  for (const auto& n : s.power_nodes) {
    for (int t = 1; t <= s.steps(); ++t) {
      m.add_objective(m.column(nm(fam::pick_p, n.id, t)),
                      w.zeta1 * n.load_weight * n.p_demand[t - 1] * dt);
      if (n.in_dr) {
        m.add_objective(m.column(nm(fam::ndrp, n.id, t)), -w.zeta1 * n.load_weight * dt);
      }
    }
  }
  for (const auto& n : s.gas_nodes) {
    for (int t = 1; t <= s.steps(); ++t) {
      m.add_objective(m.column(nm(fam::pick_n, n.id, t)),
                      w.zeta2 * n.load_weight * n.f_demand[t - 1] * dt);
      if (n.in_dr) {
        m.add_objective(m.column(nm(fam::ndrf, n.id, t)), -w.zeta2 * n.load_weight * dt);
      }
    }
  }

  // relaxation gap penalty
  for (const auto& p : s.pipelines) {
    if (p.kind != PipeKind::Passive) continue;
    for (int t = 1; t <= s.steps(); ++t) {
      m.add_objective(m.column(nm(fam::wgap, p.id, t)), -w.o1);
    }
  }

  // deployment: every traveling slot of every mobile costs
  for (const auto& mob : s.mobiles) {
    for (const std::string& site : detail::mobile_sites(mob)) {
      for (int t = 1; t <= s.steps(); ++t) {
        m.add_objective(m.column(nm2(fam::moving, mob.id, site, t)), -w.o2);
      }
    }
  }

  // fuel-exchange activity
  for (const auto& mob : s.mobiles) {
    if (mob.kind == MobileKind::RepairUnit) continue;
    for (const auto* dep : s.reachable_depots(mob)) {
      for (int t = 1; t <= s.steps(); ++t) {
        m.add_objective(m.column(nm2(fam::xen, mob.id, dep->id, t)), -w.o3);
      }
    }
  }

  // generation fuel
  for (const auto& g : s.generators) {
    for (int t = 1; t <= s.steps(); ++t) {
      if (g.gas_mode) m.add_objective(m.column(nm(fam::cgas, g.id, t)), -w.o4);
      if (g.diesel_mode) m.add_objective(m.column(nm(fam::cdsl, g.id, t)), -w.o4);
    }
  }
}

}  // namespace gridmender::encode
