#include "encode_util.hpp"

namespace gridmender::encode {

using detail::RowBuilder;
using scenario::FuelKind;
using scenario::Scenario;

namespace {

// Segment-selector window and value rows for one fuel mode of one unit.
// `power` / `burn` name the columns carrying output and consumption; for
// dual units the selector sum is gated by the mode flag so that the inactive
// mode relaxes every row.
void emit_mode(milp::Model& m, const Scenario& s, const scenario::GeneratorSpec& g,
               const scenario::FuelMode& mode, std::string_view seg_fam, std::string_view power_fam,
               std::string_view burn_fam, std::string_view gate_fam) {
  const auto& segs = mode.curve.segments();
  const double m_power = mode.p_max;
  const double m_fuel = detail::fuel_curve_big_m(mode.curve, mode.p_max);
  const char mode_code = seg_fam == fam::segg ? 'g' : 'd';

  for (int t = 1; t <= s.steps(); ++t) {
    const int p_col = m.column(nm(power_fam, g.id, t));
    const int c_col = m.column(nm(burn_fam, g.id, t));
    RowBuilder row;
    for (size_t l = 0; l < segs.size(); ++l) {
      const int tau = m.column(nmi(seg_fam, g.id, 'l', static_cast<int>(l + 1), t));
      const std::string base = g.id + "." + mode_code + std::to_string(l + 1) + ".t" +
                               std::to_string(t);
      // output confined to the active segment
      row.add(p_col, -1.0);
      row.add(tau, m_power);
      row.commit(m, "pw_win_lo." + base, milp::Sense::LessEq, m_power - segs[l].p_lo);
      row.add(p_col, 1.0);
      row.add(tau, m_power);
      row.commit(m, "pw_win_hi." + base, milp::Sense::LessEq, m_power + segs[l].p_hi);
      // consumption pinned to the segment's line while active
      row.add(c_col, 1.0);
      row.add(p_col, -segs[l].slope);
      row.add(tau, m_fuel);
      row.commit(m, "pw_eq_hi." + base, milp::Sense::LessEq, m_fuel + segs[l].intercept);
      row.add(c_col, -1.0);
      row.add(p_col, segs[l].slope);
      row.add(tau, m_fuel);
      row.commit(m, "pw_eq_lo." + base, milp::Sense::LessEq, m_fuel - segs[l].intercept);
    }
    RowBuilder sum;
    for (size_t l = 0; l < segs.size(); ++l) {
      sum.add(m.column(nmi(seg_fam, g.id, 'l', static_cast<int>(l + 1), t)), 1.0);
    }
    double rhs = 1.0;
    if (!gate_fam.empty()) {  // dual unit: exactly one segment iff the mode runs
      sum.add(m.column(nm(gate_fam, g.id, t)), -1.0);
      rhs = 0.0;
    }
    sum.commit(m, nm(mode_code == 'g' ? "pw_sum_g" : "pw_sum_d", g.id, t), milp::Sense::Eq, rhs);
  }
}

}  // namespace

void encode_fuel_consumption(const Scenario& s, milp::Model& m) {
  for (const auto& g : s.generators) {
    if (g.fuel == FuelKind::Gas) {
      emit_mode(m, s, g, *g.gas_mode, fam::segg, fam::pgen, fam::cgas, {});
    } else if (g.fuel == FuelKind::Diesel) {
      emit_mode(m, s, g, *g.diesel_mode, fam::segd, fam::pgen, fam::cdsl, {});
    } else {
      emit_mode(m, s, g, *g.gas_mode, fam::segg, fam::pmodg, fam::cgas, fam::zmodg);
      emit_mode(m, s, g, *g.diesel_mode, fam::segd, fam::pmodd, fam::cdsl, fam::zmodd);
    }
  }
}

void encode_dual_fuel(const Scenario& s, milp::Model& m) {
  for (const auto& g : s.generators) {
    if (g.fuel != FuelKind::Dual) continue;
    const double max_cg = detail::fuel_curve_big_m(g.gas_mode->curve, g.gas_mode->p_max);
    const double max_cd = detail::fuel_curve_big_m(g.diesel_mode->curve, g.diesel_mode->p_max);
    RowBuilder row;
    for (int t = 1; t <= s.steps(); ++t) {
      const int zg = m.column(nm(fam::zmodg, g.id, t));
      const int zd = m.column(nm(fam::zmodd, g.id, t));
      row.add(zg, 1.0);
      row.add(zd, 1.0);
      row.commit(m, nm("dual_mode", g.id, t), milp::Sense::Eq, 1.0);

      row.add(m.column(nm(fam::pmodg, g.id, t)), 1.0);
      row.add(zg, -g.gas_mode->p_max);
      row.commit(m, nm("dual_cap_pg", g.id, t), milp::Sense::LessEq, 0.0);
      row.add(m.column(nm(fam::cgas, g.id, t)), 1.0);
      row.add(zg, -max_cg);
      row.commit(m, nm("dual_cap_cg", g.id, t), milp::Sense::LessEq, 0.0);
      row.add(m.column(nm(fam::pmodd, g.id, t)), 1.0);
      row.add(zd, -g.diesel_mode->p_max);
      row.commit(m, nm("dual_cap_pd", g.id, t), milp::Sense::LessEq, 0.0);
      row.add(m.column(nm(fam::cdsl, g.id, t)), 1.0);
      row.add(zd, -max_cd);
      row.commit(m, nm("dual_cap_cd", g.id, t), milp::Sense::LessEq, 0.0);

      if (t >= 2) {
        const int sw = m.column(nm(fam::swf, g.id, t));
        row.add(m.column(nm(fam::zmodg, g.id, t - 1)), 1.0);
        row.add(zg, -1.0);
        row.add(sw, -1.0);
        row.commit(m, nm("dual_sw_g", g.id, t), milp::Sense::LessEq, 0.0);
        row.add(m.column(nm(fam::zmodd, g.id, t - 1)), 1.0);
        row.add(zd, -1.0);
        row.add(sw, -1.0);
        row.commit(m, nm("dual_sw_d", g.id, t), milp::Sense::LessEq, 0.0);
      }

      // actual output splits over the two modes
      row.add(m.column(nm(fam::pgen, g.id, t)), 1.0);
      row.add(m.column(nm(fam::pmodg, g.id, t)), -1.0);
      row.add(m.column(nm(fam::pmodd, g.id, t)), -1.0);
      row.commit(m, nm("dual_split", g.id, t), milp::Sense::Eq, 0.0);
    }
    if (s.steps() >= 2) {
      RowBuilder cap;
      for (int t = 2; t <= s.steps(); ++t) cap.add(m.column(nm(fam::swf, g.id, t)), 1.0);
      cap.commit(m, "dual_swcap." + g.id, milp::Sense::LessEq, g.max_switches);
    }
  }
}

}  // namespace gridmender::encode
