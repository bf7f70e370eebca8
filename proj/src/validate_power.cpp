#include <cmath>
#include <numbers>

#include "gridmender/validate.hpp"

namespace gridmender::validate {

using encode::nm;
using encode::Schedule;
using scenario::DepotKind;
using scenario::PipeKind;
using scenario::Scenario;
namespace fam = encode::fam;

namespace {

// |residual| <= linear_abs scaled by the row magnitude
bool off(double residual, double scale, double tol_abs) {
  return std::fabs(residual) > tol_abs * std::max(1.0, scale);
}

}  // namespace

std::vector<Violation> check_power(const Scenario& s, const Schedule& sched,
                                   const Tolerances& tol) {
  std::vector<Violation> out;
  const double la = tol.linear_abs;
  const double allow = 1.0 / std::cos(std::numbers::pi / tol.polygon_sides);

  for (int t = 1; t <= s.steps(); ++t) {
    for (const auto& n : s.power_nodes) {
      double p = 0.0, q = 0.0, scale_p = 0.0, scale_q = 0.0;
      auto tally = [&](double& acc, double& scale, double v) {
        acc += v;
        scale += std::fabs(v);
      };
      for (const auto& b : s.branches) {
        if (b.to == n.id) {
          tally(p, scale_p, sched.at(nm(fam::fp, b.id, t)));
          tally(q, scale_q, sched.at(nm(fam::fq, b.id, t)));
        }
        if (b.from == n.id) {
          tally(p, scale_p, -sched.at(nm(fam::fp, b.id, t)));
          tally(q, scale_q, -sched.at(nm(fam::fq, b.id, t)));
        }
      }
      for (const auto& g : s.generators) {
        if (g.node != n.id) continue;
        tally(p, scale_p, sched.at(nm(fam::pgen, g.id, t)));
        tally(q, scale_q, sched.at(nm(fam::qgen, g.id, t)));
      }
      for (const auto& e : s.energy_storages) {
        if (e.node != n.id) continue;
        tally(p, scale_p, sched.at(nm(fam::pgen, e.id, t)));
        tally(q, scale_q, sched.at(nm(fam::qgen, e.id, t)));
      }
      const double pick = sched.at(nm(fam::pick_p, n.id, t));
      tally(p, scale_p, -pick * n.p_demand[t - 1]);
      tally(q, scale_q, -pick * n.q_demand[t - 1]);
      if (n.in_dr) {
        tally(p, scale_p, sched.at(nm(fam::ndrp, n.id, t)));
        tally(q, scale_q, sched.at(nm(fam::ndrq, n.id, t)));
      }
      for (const auto& pl : s.pipelines) {
        if (pl.kind == PipeKind::Compressor && pl.supply_pn == n.id) {
          const double pc = sched.at(nm(fam::pcom, pl.id, t));
          tally(p, scale_p, -pc);
          tally(q, scale_q, -pl.power_factor * pc);
        }
      }
      for (const auto& d : s.depots) {
        if (d.kind == DepotKind::NgdsStorage && d.supply_pn == n.id) {
          const double ps = sched.at(nm(fam::pstg, d.id, t));
          tally(p, scale_p, -ps);
          tally(q, scale_q, -d.power_factor * ps);
        }
      }
      if (off(p, scale_p, la)) {
        out.push_back({"active-balance", n.id, t, p, la * std::max(1.0, scale_p),
                       "nodal active power does not balance"});
      }
      if (off(q, scale_q, la)) {
        out.push_back({"reactive-balance", n.id, t, q, la * std::max(1.0, scale_q),
                       "nodal reactive power does not balance"});
      }

      const double v2 = sched.at(nm(fam::v2, n.id, t));
      if (v2 < n.v2_min - la || v2 > n.v2_max + la) {
        out.push_back({"voltage-band", n.id, t, v2, 0.0, "squared voltage outside its band"});
      }
      if (t >= 2 &&
          sched.at(nm(fam::pick_p, n.id, t - 1)) > sched.at(nm(fam::pick_p, n.id, t)) + la) {
        out.push_back({"pickup-monotonicity", n.id, t, 0.0, 0.0,
                       "restored power load was de-energized"});
      }
    }

    for (const auto& b : s.branches) {
      const double fp = sched.at(nm(fam::fp, b.id, t));
      const double fq = sched.at(nm(fam::fq, b.id, t));
      const bool live = !b.damaged || sched.at(nm(fam::fixed, b.id, t)) > 0.5;
      if (live) {
        const double drop = sched.at(nm(fam::v2, b.to, t)) - sched.at(nm(fam::v2, b.from, t)) +
                            2.0 * (b.resistance * fp + b.reactance * fq);
        const double scale = std::fabs(sched.at(nm(fam::v2, b.from, t))) +
                             2.0 * (std::fabs(b.resistance * fp) + std::fabs(b.reactance * fq));
        if (off(drop, scale, la)) {
          out.push_back({"voltage-drop", b.id, t, drop, la * std::max(1.0, scale),
                         "voltage drop equality violated on an energized branch"});
        }
      }
      const double s_eff = live ? b.capacity : 0.0;
      const double r = std::hypot(fp, fq);
      const double limit = s_eff * allow * (1.0 + tol.circle_rel) + la;
      if (r > limit) {
        out.push_back({"branch-capacity", b.id, t, r - s_eff, limit,
                       live ? "apparent flow beyond the polygonal allowance"
                            : "flow on an unrepaired damaged branch"});
      }
    }

    for (const auto& g : s.generators) {
      const double p = sched.at(nm(fam::pgen, g.id, t));
      const double q = sched.at(nm(fam::qgen, g.id, t));
      if (q < -la || q > g.q_max + la) {
        out.push_back({"unit-reactive-band", g.id, t, q, g.q_max, "reactive output off its band"});
      }
      const double r = std::hypot(p, q);
      const double limit = g.s_app * allow * (1.0 + tol.circle_rel) + la;
      if (r > limit) {
        out.push_back({"unit-capacity", g.id, t, r - g.s_app, limit,
                       "apparent output beyond the polygonal allowance"});
      }
    }

    for (const auto& e : s.energy_storages) {
      const double p = sched.at(nm(fam::pgen, e.id, t));
      const double q = sched.at(nm(fam::qgen, e.id, t));
      const double pch = sched.at(nm(fam::pch, e.id, t));
      const double pdch = sched.at(nm(fam::pdch, e.id, t));
      const double chon = sched.at(nm(fam::chon, e.id, t));
      const double dchon = sched.at(nm(fam::dchon, e.id, t));
      if (chon > 0.5 && dchon > 0.5) {
        out.push_back({"storage-exclusivity", e.id, t, 2.0, 1.0,
                       "charging and discharging in the same slot"});
      }
      if (pch > chon * e.p_ch_max + la || pdch > dchon * e.p_dch_max + la) {
        out.push_back({"storage-power-band", e.id, t, std::max(pch, pdch), 0.0,
                       "charge or discharge power beyond its gated band"});
      }
      if (off(p - (pdch - pch), std::fabs(p) + pch + pdch, la)) {
        out.push_back({"storage-split", e.id, t, p - (pdch - pch), la,
                       "net output does not match charge/discharge split"});
      }
      const double prev = t == 1 ? e.soc_initial : sched.at(nm(fam::soc, e.id, t - 1));
      const double expect =
          prev + (e.eff_ch * pch - pdch / e.eff_dch) * sched.dt / e.energy_capacity;
      const double soc = sched.at(nm(fam::soc, e.id, t));
      if (off(soc - expect, std::fabs(prev) + std::fabs(expect), la)) {
        out.push_back({"storage-soc", e.id, t, soc - expect, la,
                       "state of charge does not follow the efficiency recursion"});
      }
      if (soc < e.soc_min - la || soc > e.soc_max + la) {
        out.push_back({"storage-soc-band", e.id, t, soc, 0.0, "state of charge off its band"});
      }
      const double r = std::hypot(p, q);
      const double limit = e.s_app * allow * (1.0 + tol.circle_rel) + la;
      if (r > limit) {
        out.push_back({"unit-capacity", e.id, t, r - e.s_app, limit,
                       "apparent output beyond the polygonal allowance"});
      }
      if (q < -e.q_max - la || q > e.q_max + la) {
        out.push_back({"unit-reactive-band", e.id, t, q, e.q_max, "reactive output off its band"});
      }
    }
  }
  return out;
}

}  // namespace gridmender::validate
