#include "encode_util.hpp"

namespace gridmender::encode {

using detail::RowBuilder;
using scenario::Scenario;

void emit_mobility_rows(milp::Model& m, const std::vector<std::vector<int>>& parked_cols,
                        const std::vector<std::vector<int>>& moving_cols,
                        const std::vector<std::vector<int>>& tau, int steps,
                        const std::string& tag) {
  const int sites = static_cast<int>(parked_cols.size());
  RowBuilder row;

  // exactly one state per slot: parked at one site or traveling toward one
  for (int t = 1; t <= steps; ++t) {
    for (int i = 0; i < sites; ++i) {
      row.add(parked_cols[i][t - 1], 1.0);
      row.add(moving_cols[i][t - 1], 1.0);
    }
    row.commit(m, tag + ".one.t" + std::to_string(t), milp::Sense::Eq, 1.0);
  }

  // cannot re-park sooner than the travel time allows
  for (int i = 0; i < sites; ++i) {
    for (int j = 0; j < sites; ++j) {
      if (i == j) continue;
      for (int t = 1; t <= steps; ++t) {
        for (int k = 1; k <= tau[i][j] && t + k <= steps; ++k) {
          row.add(parked_cols[i][t - 1], 1.0);
          row.add(parked_cols[j][t + k - 1], 1.0);
          row.commit(m,
                     tag + ".sep.s" + std::to_string(i) + ".s" + std::to_string(j) + ".t" +
                         std::to_string(t) + ".k" + std::to_string(k),
                     milp::Sense::LessEq, 1.0);
        }
      }
    }
  }

  for (int i = 0; i < sites; ++i) {
    for (int t = 2; t <= steps; ++t) {
      // parking requires having been here or inbound in the previous slot
      row.add(parked_cols[i][t - 1], 1.0);
      row.add(parked_cols[i][t - 2], -1.0);
      row.add(moving_cols[i][t - 2], -1.0);
      row.commit(m, tag + ".arr.s" + std::to_string(i) + ".t" + std::to_string(t),
                 milp::Sense::LessEq, 0.0);
      // an inbound trip continues or ends in a parking
      row.add(moving_cols[i][t - 2], 1.0);
      row.add(moving_cols[i][t - 1], -1.0);
      row.add(parked_cols[i][t - 1], -1.0);
      row.commit(m, tag + ".dst.s" + std::to_string(i) + ".t" + std::to_string(t),
                 milp::Sense::LessEq, 0.0);
    }
  }
}

void encode_mobility(const Scenario& s, milp::Model& m) {
  for (const auto& mob : s.mobiles) {
    const auto sites = detail::mobile_sites(mob);
    const int ns = static_cast<int>(sites.size());
    std::vector<std::vector<int>> parked(ns), moving(ns), tau(ns, std::vector<int>(ns, 0));
    for (int i = 0; i < ns; ++i) {
      for (int t = 1; t <= s.steps(); ++t) {
        parked[i].push_back(m.column(nm2(fam::parked, mob.id, sites[i], t)));
        moving[i].push_back(m.column(nm2(fam::moving, mob.id, sites[i], t)));
      }
      for (int j = 0; j < ns; ++j) tau[i][j] = s.travel.between(sites[i], sites[j]);
    }
    emit_mobility_rows(m, parked, moving, tau, s.steps(), "mob." + mob.id);
  }
}

}  // namespace gridmender::encode
