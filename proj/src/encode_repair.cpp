#include "encode_util.hpp"

namespace gridmender::encode {

using detail::RowBuilder;
using scenario::MobileKind;
using scenario::Scenario;

void encode_repair(const Scenario& s, milp::Model& m) {
  const auto rus = s.fleet(MobileKind::RepairUnit);
  const int fleet = static_cast<int>(rus.size());
  RowBuilder row;

  for (const auto* b : s.damaged_branches()) {
    const auto& beta = s.profile_for(b->id).beta;
    // crews that can actually reach this facility
    std::vector<const scenario::MobileResource*> crews;
    for (const auto* ru : rus) {
      const auto sites = detail::mobile_sites(*ru);
      if (std::find(sites.begin(), sites.end(), b->site) != sites.end()) crews.push_back(ru);
    }

    for (int t = 1; t <= s.steps(); ++t) {
      // count selector: exactly one crew-count state per slot
      for (int y = 0; y <= fleet; ++y) row.add(m.column(nmi(fam::crew, b->id, 'y', y, t)), 1.0);
      row.commit(m, nm("rep_one", b->id, t), milp::Sense::Eq, 1.0);

      for (const auto* ru : crews) row.add(m.column(nm2(fam::parked, ru->id, b->site, t)), 1.0);
      for (int y = 1; y <= fleet; ++y) {
        row.add(m.column(nmi(fam::crew, b->id, 'y', y, t)), -static_cast<double>(y));
      }
      row.commit(m, nm("rep_count", b->id, t), milp::Sense::Eq, 0.0);

      row.add(m.column(nm(fam::reff, b->id, t)), 1.0);
      for (int y = 1; y <= fleet; ++y) {
        row.add(m.column(nmi(fam::crew, b->id, 'y', y, t)), -beta[y]);
      }
      row.commit(m, nm("rep_eff", b->id, t), milp::Sense::Eq, 0.0);

      // a crew on site stays until the facility is back in service
      for (const auto* ru : crews) {
        const bool was_there = t == 1 && ru->initial_site == b->site;
        if (t == 1 && !was_there) continue;  // vacuous before arrival
        if (t >= 2) row.add(m.column(nm2(fam::parked, ru->id, b->site, t - 1)), 1.0);
        row.add(m.column(nm2(fam::parked, ru->id, b->site, t)), -1.0);
        row.add(m.column(nm(fam::fixed, b->id, t)), -1.0);
        row.commit(m, nm2("rep_stay", ru->id, b->id, t), milp::Sense::LessEq,
                   t == 1 ? -1.0 : 0.0);
      }

      // service returns only after accumulated health reaches one
      if (t >= 2) {
        row.add(m.column(nm(fam::fixed, b->id, t)), 1.0);
        for (int u = 1; u < t; ++u) row.add(m.column(nm(fam::reff, b->id, u)), -1.0);
        row.commit(m, nm("rep_done", b->id, t), milp::Sense::LessEq, 0.0);
        row.add(m.column(nm(fam::fixed, b->id, t - 1)), 1.0);
        row.add(m.column(nm(fam::fixed, b->id, t)), -1.0);
        row.commit(m, nm("rep_mono", b->id, t), milp::Sense::LessEq, 0.0);
      }
    }
  }
}

}  // namespace gridmender::encode
