#include <cmath>

#include "encode_util.hpp"
#include "gridmender/linearize.hpp"

namespace gridmender::encode {

using detail::RowBuilder;
using scenario::DepotKind;
using scenario::PipeKind;
using scenario::Scenario;

void encode_epds(const Scenario& s, milp::Model& m) {
  RowBuilder row;
  const int D = s.steps();

  for (const auto& n : s.power_nodes) {
    for (int t = 1; t <= D; ++t) {
      // active balance: inflow + generation = outflow + load - DR + couplings
      for (const auto& b : s.branches) {
        if (b.to == n.id) row.add(m.column(nm(fam::fp, b.id, t)), 1.0);
        if (b.from == n.id) row.add(m.column(nm(fam::fp, b.id, t)), -1.0);
      }
      for (const auto& g : s.generators) {
        if (g.node == n.id) row.add(m.column(nm(fam::pgen, g.id, t)), 1.0);
      }
      for (const auto& e : s.energy_storages) {
        if (e.node == n.id) row.add(m.column(nm(fam::pgen, e.id, t)), 1.0);
      }
      row.add(m.column(nm(fam::pick_p, n.id, t)), -n.p_demand[t - 1]);
      if (n.in_dr) row.add(m.column(nm(fam::ndrp, n.id, t)), 1.0);
      for (const auto& p : s.pipelines) {
        if (p.kind == PipeKind::Compressor && p.supply_pn == n.id) {
          row.add(m.column(nm(fam::pcom, p.id, t)), -1.0);
        }
      }
      for (const auto& d : s.depots) {
        if (d.kind == DepotKind::NgdsStorage && d.supply_pn == n.id) {
          row.add(m.column(nm(fam::pstg, d.id, t)), -1.0);
        }
      }
      row.commit(m, nm("pbal", n.id, t), milp::Sense::Eq, 0.0);

      // reactive twin with power-factor-scaled facility loads
      for (const auto& b : s.branches) {
        if (b.to == n.id) row.add(m.column(nm(fam::fq, b.id, t)), 1.0);
        if (b.from == n.id) row.add(m.column(nm(fam::fq, b.id, t)), -1.0);
      }
      for (const auto& g : s.generators) {
        if (g.node == n.id) row.add(m.column(nm(fam::qgen, g.id, t)), 1.0);
      }
      for (const auto& e : s.energy_storages) {
        if (e.node == n.id) row.add(m.column(nm(fam::qgen, e.id, t)), 1.0);
      }
      row.add(m.column(nm(fam::pick_p, n.id, t)), -n.q_demand[t - 1]);
      if (n.in_dr) row.add(m.column(nm(fam::ndrq, n.id, t)), 1.0);
      for (const auto& p : s.pipelines) {
        if (p.kind == PipeKind::Compressor && p.supply_pn == n.id && p.power_factor != 0.0) {
          row.add(m.column(nm(fam::pcom, p.id, t)), -p.power_factor);
        }
      }
      for (const auto& d : s.depots) {
        if (d.kind == DepotKind::NgdsStorage && d.supply_pn == n.id && d.power_factor != 0.0) {
          row.add(m.column(nm(fam::pstg, d.id, t)), -d.power_factor);
        }
      }
      row.commit(m, nm("qbal", n.id, t), milp::Sense::Eq, 0.0);

      if (t >= 2) {
        row.add(m.column(nm(fam::pick_p, n.id, t - 1)), 1.0);
        row.add(m.column(nm(fam::pick_p, n.id, t)), -1.0);
        row.commit(m, nm("pick_mono", n.id, t), milp::Sense::LessEq, 0.0);
      }
    }
  }

  for (const auto& b : s.branches) {
    const auto& from = s.pn(b.from);
    const auto& to = s.pn(b.to);
    const double drop_m = (from.v2_max - to.v2_min) +
                          2.0 * (std::fabs(b.resistance) + std::fabs(b.reactance)) * b.capacity;
    const auto cuts = linearize::polygon_cuts(b.capacity, s.tolerances.polygon_sides);
    for (int t = 1; t <= D; ++t) {
      const int fp_col = m.column(nm(fam::fp, b.id, t));
      const int fq_col = m.column(nm(fam::fq, b.id, t));
      const int v_from = m.column(nm(fam::v2, b.from, t));
      const int v_to = m.column(nm(fam::v2, b.to, t));

      if (!b.damaged) {
        // voltage drop holds with equality on intact branches
        row.add(v_to, 1.0);
        row.add(v_from, -1.0);
        row.add(fp_col, 2.0 * b.resistance);
        row.add(fq_col, 2.0 * b.reactance);
        row.commit(m, nm("vdrop_eq", b.id, t), milp::Sense::Eq, 0.0);
      } else {
        const int k_col = m.column(nm(fam::fixed, b.id, t));
        row.add(v_to, 1.0);
        row.add(v_from, -1.0);
        row.add(fp_col, 2.0 * b.resistance);
        row.add(fq_col, 2.0 * b.reactance);
        row.add(k_col, -drop_m);
        row.commit(m, nm("vdrop_lo", b.id, t), milp::Sense::GreaterEq, -drop_m);
        row.add(v_to, 1.0);
        row.add(v_from, -1.0);
        row.add(fp_col, 2.0 * b.resistance);
        row.add(fq_col, 2.0 * b.reactance);
        row.add(k_col, drop_m);
        row.commit(m, nm("vdrop_hi", b.id, t), milp::Sense::LessEq, drop_m);
      }

      for (size_t k = 0; k < cuts.size(); ++k) {
        row.add(fp_col, cuts[k].alpha);
        row.add(fq_col, cuts[k].beta);
        if (b.damaged) {
          // capacity scales with the repair flag: zero until back in service
          row.add(m.column(nm(fam::fixed, b.id, t)), -b.capacity);
          row.commit(m, nmi("vcap", b.id, 'k', static_cast<int>(k + 1), t), milp::Sense::LessEq,
                     0.0);
        } else {
          row.commit(m, nmi("vcap", b.id, 'k', static_cast<int>(k + 1), t), milp::Sense::LessEq,
                     cuts[k].rhs);
        }
      }
    }
  }
}

}  // namespace gridmender::encode
