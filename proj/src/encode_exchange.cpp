#include "encode_util.hpp"

namespace gridmender::encode {

using detail::RowBuilder;
using scenario::DepotKind;
using scenario::FuelKind;
using scenario::MobileKind;
using scenario::Scenario;

void encode_fuel_exchange(const Scenario& s, milp::Model& m) {
  RowBuilder row;
  const double dt = s.dt();

  // tanker inventory ledgers and parked-transfer gating
  for (const auto& mob : s.mobiles) {
    if (mob.kind == MobileKind::RepairUnit) continue;
    const auto depots = s.reachable_depots(mob);
    for (int t = 1; t <= s.steps(); ++t) {
      row.add(m.column(nm(fam::fill, mob.id, t)), 1.0);
      if (t >= 2) row.add(m.column(nm(fam::fill, mob.id, t - 1)), -1.0);
      for (const auto* dep : depots) row.add(m.column(nm2(fam::xfer, mob.id, dep->id, t)), 1.0);
      row.commit(m, nm("led_tank", mob.id, t), milp::Sense::Eq, t == 1 ? mob.initial_fill : 0.0);

      for (const auto* dep : depots) {
        const int en = m.column(nm2(fam::xen, mob.id, dep->id, t));
        const int tr = m.column(nm2(fam::xfer, mob.id, dep->id, t));
        row.add(en, 1.0);
        row.add(m.column(nm2(fam::parked, mob.id, dep->site, t)), -1.0);
        row.commit(m, nm2("xfer_gate", mob.id, dep->id, t), milp::Sense::LessEq, 0.0);
        row.add(tr, 1.0);
        row.add(en, -mob.out_max);
        row.commit(m, nm2("xfer_out", mob.id, dep->id, t), milp::Sense::LessEq, 0.0);
        row.add(tr, -1.0);
        row.add(en, -mob.in_max);
        row.commit(m, nm2("xfer_in", mob.id, dep->id, t), milp::Sense::LessEq, 0.0);
      }
    }
  }

  // tankers able to exchange with a given depot
  auto tankers_of = [&](const scenario::StorageDepot& dep) {
    std::vector<const scenario::MobileResource*> out;
    const MobileKind want =
        dep.fuel == FuelKind::Gas ? MobileKind::GasTanker : MobileKind::DieselTanker;
    for (const auto& mob : s.mobiles) {
      if (mob.kind != want) continue;
      for (const auto* d : s.reachable_depots(mob)) {
        if (d->id == dep.id) {
          out.push_back(&mob);
          break;
        }
      }
    }
    return out;
  };

  for (const auto& dep : s.depots) {
    const auto tankers = tankers_of(dep);
    for (int t = 1; t <= s.steps(); ++t) {
      row.add(m.column(nm(fam::fill, dep.id, t)), 1.0);
      if (t >= 2) row.add(m.column(nm(fam::fill, dep.id, t - 1)), -1.0);
      for (const auto* mob : tankers) row.add(m.column(nm2(fam::xfer, mob->id, dep.id, t)), -1.0);

      std::string tag = "led_res";
      switch (dep.kind) {
        case DepotKind::DieselReservoir:
          break;  // exchanges with tankers only
        case DepotKind::Onsite: {
          tag = "led_onsite";
          if (dep.fuel == FuelKind::Diesel) {
            for (const auto* g : detail::diesel_units_at_node(s, dep.node)) {
              row.add(m.column(nm(fam::cdsl, g->id, t)), 1.0);
            }
          } else {
            for (const auto* g : detail::gas_units_at_node(s, dep.node)) {
              row.add(m.column(nm(fam::cgas, g->id, t)), 1.0);
              if (!g->gas_node.empty()) {
                row.add(m.column(nm(fam::gdraw, g->id, t)), -dt);
              }
            }
          }
          break;
        }
        case DepotKind::NgdsStorage: {
          tag = "led_ngds";
          row.add(m.column(nm(fam::ginj, dep.id, t)), -dep.eff_inj * dt);
          row.add(m.column(nm(fam::gwd, dep.id, t)), dt / dep.eff_wd);
          break;
        }
      }
      row.commit(m, nm(tag, dep.id, t), milp::Sense::Eq, t == 1 ? dep.initial_fill : 0.0);

      if (dep.kind == DepotKind::NgdsStorage) {
        const int inj = m.column(nm(fam::ginj, dep.id, t));
        const int wd = m.column(nm(fam::gwd, dep.id, t));
        row.add(m.column(nm(fam::injon, dep.id, t)), 1.0);
        row.add(m.column(nm(fam::wdon, dep.id, t)), 1.0);
        row.commit(m, nm("stgx_one", dep.id, t), milp::Sense::LessEq, 1.0);
        row.add(inj, 1.0);
        row.add(m.column(nm(fam::injon, dep.id, t)), -dep.inj_max);
        row.commit(m, nm("stgx_inj", dep.id, t), milp::Sense::LessEq, 0.0);
        row.add(wd, 1.0);
        row.add(m.column(nm(fam::wdon, dep.id, t)), -dep.wd_max);
        row.commit(m, nm("stgx_wd", dep.id, t), milp::Sense::LessEq, 0.0);
        row.add(m.column(nm(fam::gstg, dep.id, t)), 1.0);
        row.add(wd, -1.0);
        row.add(inj, 1.0);
        row.commit(m, nm("stgx_net", dep.id, t), milp::Sense::Eq, 0.0);
      }
    }
  }

  // direct network draw bounded by what the unit burns
  for (const auto& g : s.generators) {
    if (g.gas_node.empty()) continue;
    const bool has_depot = s.depot_at_node(g.node, FuelKind::Gas) != nullptr;
    for (int t = 1; t <= s.steps(); ++t) {
      if (has_depot) {
        row.add(m.column(nm(fam::gdraw, g.id, t)), dt);
        row.add(m.column(nm(fam::cgas, g.id, t)), -1.0);
        row.commit(m, nm("draw_cap", g.id, t), milp::Sense::LessEq, 0.0);
      } else {
        // no onsite store: everything burned comes off the network
        row.add(m.column(nm(fam::gdraw, g.id, t)), dt);
        row.add(m.column(nm(fam::cgas, g.id, t)), -1.0);
        row.commit(m, nm("draw_all", g.id, t), milp::Sense::Eq, 0.0);
      }
    }
  }
}

}  // namespace gridmender::encode
