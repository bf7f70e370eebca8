#include "encode_util.hpp"
#include "gridmender/linearize.hpp"

namespace gridmender::encode {

using detail::RowBuilder;
using scenario::Scenario;

namespace {

void capacity_cuts(milp::Model& m, const Scenario& s, const std::string& id, int p_col, int q_col,
                   double s_app, int t) {
  const auto cuts = linearize::polygon_cuts(s_app, s.tolerances.polygon_sides);
  RowBuilder row;
  for (size_t k = 0; k < cuts.size(); ++k) {
    row.add(p_col, cuts[k].alpha);
    row.add(q_col, cuts[k].beta);
    row.commit(m, nmi("gcap", id, 'k', static_cast<int>(k + 1), t), milp::Sense::LessEq,
               cuts[k].rhs);
  }
}

}  // namespace

void encode_generation_storage(const Scenario& s, milp::Model& m) {
  RowBuilder row;
  for (const auto& g : s.generators) {
    for (int t = 1; t <= s.steps(); ++t) {
      capacity_cuts(m, s, g.id, m.column(nm(fam::pgen, g.id, t)),
                    m.column(nm(fam::qgen, g.id, t)), g.s_app, t);
    }
  }
  for (const auto& e : s.energy_storages) {
    const double per_unit = s.dt() / e.energy_capacity;
    for (int t = 1; t <= s.steps(); ++t) {
      // state of charge follows charge/discharge with efficiencies
      row.add(m.column(nm(fam::soc, e.id, t)), 1.0);
      if (t >= 2) row.add(m.column(nm(fam::soc, e.id, t - 1)), -1.0);
      row.add(m.column(nm(fam::pch, e.id, t)), -e.eff_ch * per_unit);
      row.add(m.column(nm(fam::pdch, e.id, t)), per_unit / e.eff_dch);
      row.commit(m, nm("soc_rec", e.id, t), milp::Sense::Eq, t == 1 ? e.soc_initial : 0.0);

      const int ch = m.column(nm(fam::chon, e.id, t));
      const int dch = m.column(nm(fam::dchon, e.id, t));
      row.add(ch, 1.0);
      row.add(dch, 1.0);
      row.commit(m, nm("ess_one", e.id, t), milp::Sense::LessEq, 1.0);
      row.add(m.column(nm(fam::pch, e.id, t)), 1.0);
      row.add(ch, -e.p_ch_max);
      row.commit(m, nm("ess_ch", e.id, t), milp::Sense::LessEq, 0.0);
      row.add(m.column(nm(fam::pdch, e.id, t)), 1.0);
      row.add(dch, -e.p_dch_max);
      row.commit(m, nm("ess_dch", e.id, t), milp::Sense::LessEq, 0.0);
      row.add(m.column(nm(fam::pgen, e.id, t)), 1.0);
      row.add(m.column(nm(fam::pdch, e.id, t)), -1.0);
      row.add(m.column(nm(fam::pch, e.id, t)), 1.0);
      row.commit(m, nm("ess_split", e.id, t), milp::Sense::Eq, 0.0);

      capacity_cuts(m, s, e.id, m.column(nm(fam::pgen, e.id, t)),
                    m.column(nm(fam::qgen, e.id, t)), e.s_app, t);
    }
  }
}

}  // namespace gridmender::encode
