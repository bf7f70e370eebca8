#include "encode_util.hpp"
#include "gridmender/linearize.hpp"

namespace gridmender::encode {

using detail::RowBuilder;
using scenario::DepotKind;
using scenario::PipeKind;
using scenario::Scenario;

void encode_ngds(const Scenario& s, milp::Model& m) {
  RowBuilder row;
  const int D = s.steps();

  for (const auto& n : s.gas_nodes) {
    for (int t = 1; t <= D; ++t) {
      // gas balance: inflow + sources + stores = outflow + load - DR + unit draws
      for (const auto& p : s.pipelines) {
        if (p.to == n.id) row.add(m.column(nm(fam::gf, p.id, t)), 1.0);
        if (p.from == n.id) row.add(m.column(nm(fam::gf, p.id, t)), -1.0);
      }
      for (const auto& src : s.sources) {
        if (src.node == n.id) row.add(m.column(nm(fam::gsrc, src.id, t)), 1.0);
      }
      for (const auto& d : s.depots) {
        if (d.kind == DepotKind::NgdsStorage && d.gas_node == n.id) {
          row.add(m.column(nm(fam::gstg, d.id, t)), 1.0);
        }
      }
      row.add(m.column(nm(fam::pick_n, n.id, t)), -n.f_demand[t - 1]);
      if (n.in_dr) row.add(m.column(nm(fam::ndrf, n.id, t)), 1.0);
      for (const auto& g : s.generators) {
        if (g.gas_node == n.id) row.add(m.column(nm(fam::gdraw, g.id, t)), -1.0);
      }
      row.commit(m, nm("gbal", n.id, t), milp::Sense::Eq, 0.0);

      if (t >= 2) {
        row.add(m.column(nm(fam::pick_n, n.id, t - 1)), 1.0);
        row.add(m.column(nm(fam::pick_n, n.id, t)), -1.0);
        row.commit(m, nm("gpick_mono", n.id, t), milp::Sense::LessEq, 0.0);
      }
    }
  }

  for (const auto& p : s.pipelines) {
    if (p.kind == PipeKind::Compressor) {
      const auto& suction = s.gn(p.from);
      const auto& discharge = s.gn(p.to);
      const double lo2 = p.ratio_min * p.ratio_min;
      const double hi2 = p.ratio_max * p.ratio_max;
      const double m_lo = std::max(0.0, lo2 * suction.pi2_max - discharge.pi2_min);
      const double m_hi = std::max(0.0, discharge.pi2_max - hi2 * suction.pi2_min);
      const double m_byp = std::max(suction.pi2_max - discharge.pi2_min,
                                    discharge.pi2_max - suction.pi2_min);
      const double m_pow = p.power_coeff * p.flow_max;
      for (int t = 1; t <= D; ++t) {
        const int on = m.column(nm(fam::compon, p.id, t));
        const int power = m.column(nm(fam::pcom, p.id, t));
        const int flow = m.column(nm(fam::gf, p.id, t));
        const int pr_in = m.column(nm(fam::pr2, p.from, t));
        const int pr_out = m.column(nm(fam::pr2, p.to, t));

        // boost window applies while powered
        row.add(pr_in, lo2);
        row.add(pr_out, -1.0);
        row.add(on, m_lo);
        row.commit(m, nm("comp_ratio_lo", p.id, t), milp::Sense::LessEq, m_lo);
        row.add(pr_out, 1.0);
        row.add(pr_in, -hi2);
        row.add(on, m_hi);
        row.commit(m, nm("comp_ratio_hi", p.id, t), milp::Sense::LessEq, m_hi);

        // drive power proportional to flow while powered
        row.add(power, 1.0);
        row.add(flow, -p.power_coeff);
        row.add(on, m_pow);
        row.commit(m, nm("comp_pow_hi", p.id, t), milp::Sense::LessEq, m_pow);
        row.add(power, -1.0);
        row.add(flow, p.power_coeff);
        row.add(on, m_pow);
        row.commit(m, nm("comp_pow_lo", p.id, t), milp::Sense::LessEq, m_pow);

        // unpowered: bypass with equal pressures and no draw
        row.add(pr_in, 1.0);
        row.add(pr_out, -1.0);
        row.add(on, -m_byp);
        row.commit(m, nm("comp_byp_hi", p.id, t), milp::Sense::LessEq, 0.0);
        row.add(pr_out, 1.0);
        row.add(pr_in, -1.0);
        row.add(on, -m_byp);
        row.commit(m, nm("comp_byp_lo", p.id, t), milp::Sense::LessEq, 0.0);
        row.add(power, 1.0);
        row.add(on, -m_pow);
        row.commit(m, nm("comp_on", p.id, t), milp::Sense::LessEq, 0.0);

        // the drive runs only while its supply node is energized
        row.add(on, 1.0);
        row.add(m.column(nm(fam::pick_p, p.supply_pn, t)), -1.0);
        row.commit(m, nm("comp_link", p.id, t), milp::Sense::LessEq, 0.0);
      }
      continue;
    }

    // passive pipe: direction binary, tangent underestimators, windowed gap
    const auto env =
        linearize::weymouth_envelope(p.weymouth_k, p.flow_max, s.tolerances.weymouth_tangents);
    const auto& from = s.gn(p.from);
    const auto& to = s.gn(p.to);
    const double press_m = std::max(from.pi2_max - to.pi2_min, to.pi2_max - from.pi2_min) +
                           p.weymouth_k * p.flow_max * p.flow_max;
    const int tangents = env.tangent_count();

    for (int t = 1; t <= D; ++t) {
      const int flow = m.column(nm(fam::gf, p.id, t));
      const int dir = m.column(nm(fam::wdir, p.id, t));
      const int gap = m.column(nm(fam::wgap, p.id, t));
      const int pr_from = m.column(nm(fam::pr2, p.from, t));
      const int pr_to = m.column(nm(fam::pr2, p.to, t));

      // flow sign follows the direction flag
      row.add(flow, 1.0);
      row.add(dir, -p.flow_max);
      row.commit(m, nm("wey_dir_hi", p.id, t), milp::Sense::LessEq, 0.0);
      row.add(flow, -1.0);
      row.add(dir, -p.flow_max);
      row.commit(m, nm("wey_dir_lo", p.id, t), milp::Sense::LessEq, p.flow_max);

      // pressure drop sign follows the direction flag
      row.add(pr_from, 1.0);
      row.add(pr_to, -1.0);
      row.add(dir, -press_m);
      row.commit(m, nm("wey_psign_hi", p.id, t), milp::Sense::LessEq, 0.0);
      row.add(pr_from, 1.0);
      row.add(pr_to, -1.0);
      row.add(dir, -press_m);
      row.commit(m, nm("wey_psign_lo", p.id, t), milp::Sense::GreaterEq, -press_m);

      for (int l = 0; l < tangents; ++l) {
        const double slope = env.tangent_slope(l);
        const double offset = env.tangent_offset(l);
        // forward: tangent lines stay below the pressure drop
        row.add(flow, slope);
        row.add(pr_from, -1.0);
        row.add(pr_to, 1.0);
        row.add(dir, press_m);
        row.commit(m, nmi("wey_tan_f", p.id, 'k', l + 1, t), milp::Sense::LessEq,
                   -offset + press_m);
        // reverse: mirrored on the negated flow and drop
        row.add(flow, -slope);
        row.add(pr_from, 1.0);
        row.add(pr_to, -1.0);
        row.add(dir, -press_m);
        row.commit(m, nmi("wey_tan_r", p.id, 'k', l + 1, t), milp::Sense::LessEq, -offset);
      }

      // window selectors partition |flow|
      for (int l = 0; l < tangents; ++l) {
        row.add(m.column(nmi(fam::wwin, p.id, 'k', l + 1, t)), 1.0);
      }
      row.commit(m, nm("wey_wsum", p.id, t), milp::Sense::Eq, 1.0);
      for (int l = 0; l < tangents; ++l) {
        const int win = m.column(nmi(fam::wwin, p.id, 'k', l + 1, t));
        const double lo = env.window_edges[l];
        const double hi = env.window_edges[l + 1];
        row.add(flow, 1.0);
        row.add(win, -p.flow_max);
        row.add(dir, -p.flow_max);
        row.commit(m, nmi("wey_wwin_flo", p.id, 'k', l + 1, t), milp::Sense::GreaterEq,
                   lo - 2.0 * p.flow_max);
        row.add(flow, 1.0);
        row.add(win, p.flow_max);
        row.add(dir, p.flow_max);
        row.commit(m, nmi("wey_wwin_fhi", p.id, 'k', l + 1, t), milp::Sense::LessEq,
                   hi + 2.0 * p.flow_max);
        row.add(flow, -1.0);
        row.add(win, -p.flow_max);
        row.add(dir, p.flow_max);
        row.commit(m, nmi("wey_wwin_rlo", p.id, 'k', l + 1, t), milp::Sense::GreaterEq,
                   lo - p.flow_max);
        row.add(flow, -1.0);
        row.add(win, p.flow_max);
        row.add(dir, -p.flow_max);
        row.commit(m, nmi("wey_wwin_rhi", p.id, 'k', l + 1, t), milp::Sense::LessEq,
                   hi + p.flow_max);

        // gap slack measures the drop above the active tangent
        row.add(gap, 1.0);
        row.add(pr_from, -1.0);
        row.add(pr_to, 1.0);
        row.add(flow, env.tangent_slope(l));
        row.add(win, -press_m);
        row.add(dir, -press_m);
        row.commit(m, nmi("wey_gap_f", p.id, 'k', l + 1, t), milp::Sense::GreaterEq,
                   -env.tangent_offset(l) - 2.0 * press_m);
        row.add(gap, 1.0);
        row.add(pr_from, 1.0);
        row.add(pr_to, -1.0);
        row.add(flow, -env.tangent_slope(l));
        row.add(win, -press_m);
        row.add(dir, press_m);
        row.commit(m, nmi("wey_gap_r", p.id, 'k', l + 1, t), milp::Sense::GreaterEq,
                   -env.tangent_offset(l) - press_m);
      }
    }
  }

  // storage drive power follows the commanded exchange flows
  for (const auto& d : s.depots) {
    if (d.kind != DepotKind::NgdsStorage) continue;
    for (int t = 1; t <= D; ++t) {
      row.add(m.column(nm(fam::pstg, d.id, t)), 1.0);
      row.add(m.column(nm(fam::ginj, d.id, t)), -d.power_coeff_inj);
      row.add(m.column(nm(fam::gwd, d.id, t)), -d.power_coeff_wd);
      row.commit(m, nm("stg_pow", d.id, t), milp::Sense::Eq, 0.0);
    }
  }
}

}  // namespace gridmender::encode
