#include "encode_util.hpp"

namespace gridmender::encode {

using detail::RowBuilder;
using scenario::Scenario;

void emit_dr_window_rows(milp::Model& m, const std::vector<int>& gamma_cols, int total_max,
                         int du_max, int du_min, int int_min, const std::string& tag) {
  const int D = static_cast<int>(gamma_cols.size());
  RowBuilder row;

  for (int t = 1; t <= D; ++t) row.add(gamma_cols[t - 1], 1.0);
  row.commit(m, tag + ".total", milp::Sense::LessEq, total_max);

  // any window of du_max+1 consecutive slots has an inactive one
  for (int t = 1; t <= D - du_max; ++t) {
    for (int l = 0; l <= du_max; ++l) row.add(gamma_cols[t + l - 1], 1.0);
    row.commit(m, tag + ".durmax.t" + std::to_string(t), milp::Sense::LessEq, du_max);
  }
  // an event starting at t runs at least du_min slots (when they fit)
  for (int t = 1; t <= D - du_min + 1; ++t) {
    for (int l = 0; l < du_min; ++l) row.add(gamma_cols[t + l - 1], 1.0);
    row.add(gamma_cols[t - 1], -du_min);
    if (t >= 2) row.add(gamma_cols[t - 2], du_min);  // no slot precedes t=1
    row.commit(m, tag + ".durmin.t" + std::to_string(t), milp::Sense::GreaterEq, 0.0);
  }
  // an event ending at t keeps the zone quiet for int_min slots (when they fit)
  for (int t = 1; t <= D - int_min + 1; ++t) {
    for (int l = 0; l < int_min; ++l) row.add(gamma_cols[t + l - 1], -1.0);
    row.add(gamma_cols[t - 1], int_min);
    if (t >= 2) row.add(gamma_cols[t - 2], -int_min);
    row.commit(m, tag + ".gap.t" + std::to_string(t), milp::Sense::GreaterEq, -int_min);
  }
}

void encode_dr(const Scenario& s, milp::Model& m) {
  RowBuilder row;
  const int D = s.steps();

  for (const auto& z : s.zones) {
    bool any_p = false, any_f = false;
    for (int t = 0; t < D; ++t) {
      any_p = any_p || z.base_p[t] > 0.0;
      any_f = any_f || z.base_f[t] > 0.0;
    }
    if (!any_p && z.sig_p_max > 0.0) {
      throw scenario::InvariantError("zone '" + z.id +
                                     "': power reduction allowed but base power is all zero");
    }
    if (!any_f && z.sig_n_max > 0.0) {
      throw scenario::InvariantError("zone '" + z.id +
                                     "': gas reduction allowed but base gas is all zero");
    }

    std::vector<int> gp, gn;
    for (int t = 1; t <= D; ++t) {
      gp.push_back(m.column(nm(fam::dronp, z.id, t)));
      gn.push_back(m.column(nm(fam::dronn, z.id, t)));
    }

    for (int t = 1; t <= D; ++t) {
      // active only while the supplying node is energized
      row.add(gp[t - 1], 1.0);
      row.add(m.column(nm(fam::pick_p, z.pn, t)), -1.0);
      row.commit(m, nm("dr_gate_p", z.id, t), milp::Sense::LessEq, 0.0);
      row.add(gn[t - 1], 1.0);
      row.add(m.column(nm(fam::pick_n, z.gn, t)), -1.0);
      row.commit(m, nm("dr_gate_n", z.id, t), milp::Sense::LessEq, 0.0);
    }

    emit_dr_window_rows(m, gp, z.tp_max, z.tp_du_max, z.tp_du_min, z.tp_int_min,
                        "dr_win_p." + z.id);
    emit_dr_window_rows(m, gn, z.tn_max, z.tn_du_max, z.tn_du_min, z.tn_int_min,
                        "dr_win_n." + z.id);

    for (int t = 1; t <= D; ++t) {
      const double bp = z.base_p[t - 1];
      const double bf = z.base_f[t - 1];
      const int p_red = m.column(nm(fam::drp, z.id, t));
      const int q_red = m.column(nm(fam::drq, z.id, t));
      const int f_red = m.column(nm(fam::drf, z.id, t));

      row.add(p_red, 1.0);
      row.add(gp[t - 1], -z.sig_p_max * bp);
      row.commit(m, nm("dr_band_p_hi", z.id, t), milp::Sense::LessEq, 0.0);
      row.add(p_red, -1.0);
      row.add(gp[t - 1], z.sig_p_min * bp);
      row.commit(m, nm("dr_band_p_lo", z.id, t), milp::Sense::LessEq, 0.0);
      row.add(q_red, 1.0);
      row.add(p_red, -z.power_factor);
      row.commit(m, nm("dr_band_q", z.id, t), milp::Sense::Eq, 0.0);

      row.add(f_red, 1.0);
      row.add(gn[t - 1], -z.sig_n_max * bf);
      row.commit(m, nm("dr_band_f_hi", z.id, t), milp::Sense::LessEq, 0.0);
      row.add(f_red, -1.0);
      row.add(gn[t - 1], z.sig_n_min * bf);
      row.commit(m, nm("dr_band_f_lo", z.id, t), milp::Sense::LessEq, 0.0);

      // integrated reduction cap; a zero-base side drops its ratio term
      // because the band rows already force that reduction to zero
      const bool use_p = bp > 0.0;
      const bool use_f = bf > 0.0;
      if (use_p || use_f) {
        if (use_p) row.add(p_red, 1.0 / bp);
        if (use_f) row.add(f_red, 1.0 / bf);
        row.commit(m, nm("dr_hcap", z.id, t), milp::Sense::LessEq, z.h_cap);
      }
    }
  }

  // nodal aggregation over the incidence pattern
  for (const auto& n : s.power_nodes) {
    if (!n.in_dr) continue;
    for (int t = 1; t <= D; ++t) {
      row.add(m.column(nm(fam::ndrp, n.id, t)), 1.0);
      for (const auto& z : s.zones) {
        if (z.pn == n.id) row.add(m.column(nm(fam::drp, z.id, t)), -1.0);
      }
      row.commit(m, nm("dr_agg_p", n.id, t), milp::Sense::Eq, 0.0);
      row.add(m.column(nm(fam::ndrq, n.id, t)), 1.0);
      for (const auto& z : s.zones) {
        if (z.pn == n.id) row.add(m.column(nm(fam::drq, z.id, t)), -1.0);
      }
      row.commit(m, nm("dr_agg_q", n.id, t), milp::Sense::Eq, 0.0);
    }
  }
  for (const auto& n : s.gas_nodes) {
    if (!n.in_dr) continue;
    for (int t = 1; t <= D; ++t) {
      row.add(m.column(nm(fam::ndrf, n.id, t)), 1.0);
      for (const auto& z : s.zones) {
        if (z.gn == n.id) row.add(m.column(nm(fam::drf, z.id, t)), -1.0);
      }
      row.commit(m, nm("dr_agg_f", n.id, t), milp::Sense::Eq, 0.0);
    }
  }
}

}  // namespace gridmender::encode
