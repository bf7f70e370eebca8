#include <algorithm>
#include <cmath>
#include <set>

#include "gridmender/validate.hpp"

namespace gridmender::validate {

using encode::nm;
using encode::nm2;
using encode::nmi;
using encode::Schedule;
using scenario::DepotKind;
using scenario::FuelKind;
using scenario::MobileKind;
using scenario::Scenario;
namespace fam = encode::fam;

bool mobility_path_ok(const std::vector<std::vector<int>>& tau, int initial_site,
                      std::span<const MobileState> path) {
  if (path.empty()) return true;
  if (!path[0].parked || path[0].site != initial_site) return false;
  for (size_t t = 1; t < path.size(); ++t) {
    const MobileState& cur = path[t];
    const MobileState& prev = path[t - 1];
    if (cur.parked) {
      // must have been here already or inbound
      if (!(prev.site == cur.site)) return false;
    } else {
      // a trip starts from a parking or continues an inbound trip
      if (!prev.parked && prev.site != cur.site) return false;
    }
  }
  // no re-parking sooner than the pairwise travel time allows
  for (size_t t = 0; t < path.size(); ++t) {
    if (!path[t].parked) continue;
    for (size_t u = t + 1; u < path.size(); ++u) {
      if (!path[u].parked || path[u].site == path[t].site) continue;
      if (static_cast<int>(u - t) <= tau[path[t].site][path[u].site]) return false;
    }
  }
  return true;
}

namespace {

std::vector<std::string> sites_of(const scenario::MobileResource& mob) {
  std::set<std::string> sites(mob.accessible_sites.begin(), mob.accessible_sites.end());
  sites.insert(mob.initial_site);
  return {sites.begin(), sites.end()};
}

}  // namespace

std::vector<Violation> check_logistics(const Scenario& s, const Schedule& sched,
                                       const Tolerances& tol) {
  std::vector<Violation> out;
  const double la = tol.ledger_abs;
  const double dt = sched.dt;

  // mobility: exactly one state per slot and travel-time legality
  for (const auto& mob : s.mobiles) {
    const auto sites = sites_of(mob);
    const int ns = static_cast<int>(sites.size());
    std::vector<std::vector<int>> tau(ns, std::vector<int>(ns, 0));
    for (int i = 0; i < ns; ++i) {
      for (int j = 0; j < ns; ++j) tau[i][j] = s.travel.between(sites[i], sites[j]);
    }
    int initial = -1;
    std::vector<MobileState> path(s.steps());
    bool well_formed = true;
    for (int i = 0; i < ns; ++i) {
      if (sites[i] == mob.initial_site) initial = i;
    }
    for (int t = 1; t <= s.steps(); ++t) {
      int count = 0;
      for (int i = 0; i < ns; ++i) {
        if (sched.at(nm2(fam::parked, mob.id, sites[i], t)) > 0.5) {
          path[t - 1] = {true, i};
          ++count;
        }
        if (sched.at(nm2(fam::moving, mob.id, sites[i], t)) > 0.5) {
          path[t - 1] = {false, i};
          ++count;
        }
      }
      if (count != 1) {
        out.push_back({"mobility-state", mob.id, t, static_cast<double>(count), 1.0,
                       "mobile is not in exactly one state"});
        well_formed = false;
      }
    }
    if (well_formed && !mobility_path_ok(tau, initial, path)) {
      out.push_back({"mobility-path", mob.id, 0, 0.0, 0.0,
                     "itinerary violates travel times or trip continuity"});
    }
  }

  // tanker ledgers and parked-only transfers
  for (const auto& mob : s.mobiles) {
    if (mob.kind == MobileKind::RepairUnit) continue;
    double fill = mob.initial_fill;
    for (int t = 1; t <= s.steps(); ++t) {
      double moved = 0.0;
      for (const auto* dep : s.reachable_depots(mob)) {
        const double v = sched.at(nm2(fam::xfer, mob.id, dep->id, t));
        const double en = sched.at(nm2(fam::xen, mob.id, dep->id, t));
        const double parked = sched.at(nm2(fam::parked, mob.id, dep->site, t));
        if (en > 0.5 && parked < 0.5) {
          out.push_back({"transfer-while-unparked", mob.id, t, en, 0.0,
                         "transfer enabled away from depot '" + dep->id + "'"});
        }
        if (v > en * mob.out_max + la || v < -en * mob.in_max - la) {
          out.push_back({"transfer-band", mob.id, t, v, mob.out_max,
                         "transfer with depot '" + dep->id + "' beyond its gated band"});
        }
        moved += v;
      }
      fill -= moved;
      const double have = sched.at(nm(fam::fill, mob.id, t));
      if (std::fabs(have - fill) > la * std::max(1.0, std::fabs(fill))) {
        out.push_back({"ledger", mob.id, t, have - fill, la, "tanker inventory off its ledger"});
      }
      if (have < -la || have > mob.capacity + la) {
        out.push_back({"capacity-band", mob.id, t, have, mob.capacity,
                       "tanker inventory outside [0, capacity]"});
      }
      fill = have;  // follow the schedule to keep residuals local
    }
  }

  // depot ledgers
  for (const auto& dep : s.depots) {
    double fill = dep.initial_fill;
    for (int t = 1; t <= s.steps(); ++t) {
      double delta = 0.0;
      for (const auto& mob : s.mobiles) {
        if (mob.kind == MobileKind::RepairUnit) continue;
        for (const auto* d : s.reachable_depots(mob)) {
          if (d->id == dep.id) delta += sched.at(nm2(fam::xfer, mob.id, dep.id, t));
        }
      }
      if (dep.kind == DepotKind::Onsite) {
        for (const auto& g : s.generators) {
          if (g.node != dep.node) continue;
          if (dep.fuel == FuelKind::Gas && g.fuel != FuelKind::Diesel) {
            delta -= sched.at(nm(fam::cgas, g.id, t));
            if (!g.gas_node.empty()) delta += dt * sched.at(nm(fam::gdraw, g.id, t));
          }
          if (dep.fuel == FuelKind::Diesel && g.fuel != FuelKind::Gas) {
            delta -= sched.at(nm(fam::cdsl, g.id, t));
          }
        }
      } else if (dep.kind == DepotKind::NgdsStorage) {
        delta += dt * dep.eff_inj * sched.at(nm(fam::ginj, dep.id, t));
        delta -= dt / dep.eff_wd * sched.at(nm(fam::gwd, dep.id, t));
      }
      fill += delta;
      const double have = sched.at(nm(fam::fill, dep.id, t));
      if (std::fabs(have - fill) > la * std::max(1.0, std::fabs(fill))) {
        out.push_back({"ledger", dep.id, t, have - fill, la, "depot inventory off its ledger"});
      }
      if (have < -la || have > dep.capacity + la) {
        out.push_back({"capacity-band", dep.id, t, have, dep.capacity,
                       "depot inventory outside [0, capacity]"});
      }
      fill = have;
    }
  }

  // fuel consumption must sit on the fitted curves
  const double fa = tol.linear_abs;
  for (const auto& g : s.generators) {
    for (int t = 1; t <= s.steps(); ++t) {
      if (g.fuel == FuelKind::Gas) {
        const double p = sched.at(nm(fam::pgen, g.id, t));
        const double c = sched.at(nm(fam::cgas, g.id, t));
        const double expect = g.gas_mode->curve.evaluate(p);
        if (std::fabs(c - expect) > fa * std::max(1.0, expect)) {
          out.push_back({"fuel-curve", g.id, t, c - expect, fa, "gas burn off the fitted curve"});
        }
      } else if (g.fuel == FuelKind::Diesel) {
        const double p = sched.at(nm(fam::pgen, g.id, t));
        const double c = sched.at(nm(fam::cdsl, g.id, t));
        const double expect = g.diesel_mode->curve.evaluate(p);
        if (std::fabs(c - expect) > fa * std::max(1.0, expect)) {
          out.push_back({"fuel-curve", g.id, t, c - expect, fa,
                         "diesel burn off the fitted curve"});
        }
      } else {
        const double zg = sched.at(nm(fam::zmodg, g.id, t));
        const double zd = sched.at(nm(fam::zmodd, g.id, t));
        if (std::fabs(zg + zd - 1.0) > 0.5) {
          out.push_back({"dual-mode", g.id, t, zg + zd, 1.0,
                         "dual unit not in exactly one fuel mode"});
        }
        const double pg = sched.at(nm(fam::pmodg, g.id, t));
        const double pd = sched.at(nm(fam::pmodd, g.id, t));
        const double cg = sched.at(nm(fam::cgas, g.id, t));
        const double cd = sched.at(nm(fam::cdsl, g.id, t));
        const double p = sched.at(nm(fam::pgen, g.id, t));
        if (std::fabs(p - pg - pd) > fa * std::max(1.0, std::fabs(p))) {
          out.push_back({"dual-split", g.id, t, p - pg - pd, fa,
                         "output does not split over the modes"});
        }
        if (zg > 0.5) {
          const double expect = g.gas_mode->curve.evaluate(pg);
          if (std::fabs(cg - expect) > fa * std::max(1.0, expect) || cd > fa || pd > fa) {
            out.push_back({"fuel-curve", g.id, t, cg - expect, fa,
                           "gas-mode burn or idle diesel values off"});
          }
        } else {
          const double expect = g.diesel_mode->curve.evaluate(pd);
          if (std::fabs(cd - expect) > fa * std::max(1.0, expect) || cg > fa || pg > fa) {
            out.push_back({"fuel-curve", g.id, t, cd - expect, fa,
                           "diesel-mode burn or idle gas values off"});
          }
        }
      }
      if (!g.gas_node.empty()) {
        const double draw = sched.at(nm(fam::gdraw, g.id, t));
        const double cg = sched.at(nm(fam::cgas, g.id, t));
        if (draw * dt > cg + fa * std::max(1.0, cg) || draw < -fa) {
          out.push_back({"draw-cap", g.id, t, draw * dt - cg, fa,
                         "network draw beyond the unit's burn"});
        }
      }
    }
    // dual-fuel switch budget
    if (g.fuel == FuelKind::Dual) {
      int switches = 0;
      for (int t = 2; t <= s.steps(); ++t) {
        const double prev = sched.at(nm(fam::zmodg, g.id, t - 1));
        const double cur = sched.at(nm(fam::zmodg, g.id, t));
        if (std::fabs(prev - cur) > 0.5) ++switches;
      }
      if (switches > g.max_switches) {
        out.push_back({"switch-budget", g.id, 0, static_cast<double>(switches),
                       static_cast<double>(g.max_switches),
                       "dual unit switched fuel more often than allowed"});
      }
    }
  }

  // repair: recompute crew counts, health accumulation, and the no-abandon rule
  const auto rus = s.fleet(MobileKind::RepairUnit);
  for (const auto* b : s.damaged_branches()) {
    const auto& beta = s.profile_for(b->id).beta;
    double health = 0.0;
    for (int t = 1; t <= s.steps(); ++t) {
      int count = 0;
      for (const auto* ru : rus) {
        const auto sites = sites_of(*ru);
        if (std::find(sites.begin(), sites.end(), b->site) == sites.end()) continue;
        if (sched.at(nm2(fam::parked, ru->id, b->site, t)) > 0.5) ++count;
      }
      const double eff = sched.at(nm(fam::reff, b->id, t));
      const double expect = beta[static_cast<size_t>(count)];
      if (std::fabs(eff - expect) > fa) {
        out.push_back({"repair-efficiency", b->id, t, eff - expect, fa,
                       "efficiency does not match the crew count"});
      }
      const double fixed = sched.at(nm(fam::fixed, b->id, t));
      if (t == 1 && fixed > 0.5) {
        out.push_back({"repair-start", b->id, t, fixed, 0.0,
                       "facility marked repaired in the first slot"});
      }
      if (t >= 2) {
        const double prev_fixed = sched.at(nm(fam::fixed, b->id, t - 1));
        if (prev_fixed > fixed + 0.5) {
          out.push_back({"repair-monotonicity", b->id, t, prev_fixed - fixed, 0.0,
                         "repaired facility reverted"});
        }
        if (fixed > 0.5 && health < 1.0 - fa) {
          out.push_back({"repair-health", b->id, t, health, 1.0,
                         "facility returned to service before full health"});
        }
      }
      // leaving before completion
      for (const auto* ru : rus) {
        const auto sites = sites_of(*ru);
        if (std::find(sites.begin(), sites.end(), b->site) == sites.end()) continue;
        const double prev = t == 1 ? (ru->initial_site == b->site ? 1.0 : 0.0)
                                   : sched.at(nm2(fam::parked, ru->id, b->site, t - 1));
        const double cur = sched.at(nm2(fam::parked, ru->id, b->site, t));
        if (prev > cur + 0.5 && fixed < 0.5) {
          out.push_back({"repair-abandon", ru->id, t, prev - cur, 0.0,
                         "crew left '" + b->id + "' before it was repaired"});
        }
      }
      health += eff;  // available from the next slot on
    }
  }

  return out;
}

}  // namespace gridmender::validate
