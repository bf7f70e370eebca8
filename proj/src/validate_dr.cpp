#include <cmath>

#include "gridmender/validate.hpp"

namespace gridmender::validate {

using encode::nm;
using encode::Schedule;
using scenario::Scenario;
namespace fam = encode::fam;

bool dr_pattern_ok(std::span<const int> pattern, int total_max, int du_max, int du_min,
                   int int_min) {
  const int D = static_cast<int>(pattern.size());
  int total = 0;
  for (int v : pattern) total += v;
  if (total > total_max) return false;

  // runs longer than du_max are never allowed
  int run = 0;
  for (int t = 0; t < D; ++t) {
    run = pattern[t] ? run + 1 : 0;
    if (run > du_max) return false;
  }
  // an event starting early enough to fit must run at least du_min slots;
  // events truncated by the horizon are exempt
  for (int t = 0; t < D; ++t) {
    const bool starts = pattern[t] && (t == 0 || !pattern[t - 1]);
    if (!starts || t + du_min > D) continue;
    for (int l = 0; l < du_min; ++l) {
      if (!pattern[t + l]) return false;
    }
  }
  // a gap opening early enough to fit must last at least int_min slots
  for (int t = 1; t < D; ++t) {
    const bool ends = !pattern[t] && pattern[t - 1];
    if (!ends || t + int_min > D) continue;
    for (int l = 0; l < int_min; ++l) {
      if (pattern[t + l]) return false;
    }
  }
  return true;
}

std::vector<Violation> check_dr(const Scenario& s, const Schedule& sched, const Tolerances& tol) {
  std::vector<Violation> out;
  const double la = tol.linear_abs;
  const int D = s.steps();

  for (const auto& z : s.zones) {
    std::vector<int> gp(D), gn(D);
    for (int t = 1; t <= D; ++t) {
      gp[t - 1] = sched.at(nm(fam::dronp, z.id, t)) > 0.5 ? 1 : 0;
      gn[t - 1] = sched.at(nm(fam::dronn, z.id, t)) > 0.5 ? 1 : 0;
    }
    if (!dr_pattern_ok(gp, z.tp_max, z.tp_du_max, z.tp_du_min, z.tp_int_min)) {
      out.push_back({"dr-window", z.id, 0, 0.0, 0.0,
                     "power DR pattern violates its duration/interval rules"});
    }
    if (!dr_pattern_ok(gn, z.tn_max, z.tn_du_max, z.tn_du_min, z.tn_int_min)) {
      out.push_back({"dr-window", z.id, 0, 0.0, 0.0,
                     "gas DR pattern violates its duration/interval rules"});
    }

    for (int t = 1; t <= D; ++t) {
      // activation only under an energized source node
      if (gp[t - 1] && sched.at(nm(fam::pick_p, z.pn, t)) < 0.5) {
        out.push_back({"dr-gate", z.id, t, 1.0, 0.0, "power DR active on a dark node"});
      }
      if (gn[t - 1] && sched.at(nm(fam::pick_n, z.gn, t)) < 0.5) {
        out.push_back({"dr-gate", z.id, t, 1.0, 0.0, "gas DR active on an unserved node"});
      }

      const double bp = z.base_p[t - 1];
      const double bf = z.base_f[t - 1];
      const double rp = sched.at(nm(fam::drp, z.id, t));
      const double rq = sched.at(nm(fam::drq, z.id, t));
      const double rf = sched.at(nm(fam::drf, z.id, t));
      const double lo_p = gp[t - 1] * z.sig_p_min * bp;
      const double hi_p = gp[t - 1] * z.sig_p_max * bp;
      if (rp < lo_p - la || rp > hi_p + la) {
        out.push_back({"dr-band", z.id, t, rp, hi_p, "power reduction off its gated band"});
      }
      if (std::fabs(rq - z.power_factor * rp) > la * std::max(1.0, std::fabs(rq))) {
        out.push_back({"dr-band", z.id, t, rq - z.power_factor * rp, la,
                       "reactive reduction off its power-factor tie"});
      }
      const double lo_f = gn[t - 1] * z.sig_n_min * bf;
      const double hi_f = gn[t - 1] * z.sig_n_max * bf;
      if (rf < lo_f - la || rf > hi_f + la) {
        out.push_back({"dr-band", z.id, t, rf, hi_f, "gas reduction off its gated band"});
      }
      double stress = 0.0;
      if (bp > 0.0) stress += rp / bp;
      if (bf > 0.0) stress += rf / bf;
      if (stress > z.h_cap + la) {
        out.push_back({"dr-integrated-cap", z.id, t, stress, z.h_cap,
                       "combined power and gas reduction above the zone cap"});
      }
    }
  }

  // nodal aggregation identity against the incidence pattern
  for (int t = 1; t <= D; ++t) {
    for (const auto& n : s.power_nodes) {
      if (!n.in_dr) continue;
      double sum_p = 0.0, sum_q = 0.0;
      for (const auto& z : s.zones) {
        if (z.pn != n.id) continue;
        sum_p += sched.at(nm(fam::drp, z.id, t));
        sum_q += sched.at(nm(fam::drq, z.id, t));
      }
      const double np = sched.at(nm(fam::ndrp, n.id, t));
      const double nq = sched.at(nm(fam::ndrq, n.id, t));
      if (std::fabs(np - sum_p) > la * std::max(1.0, sum_p) ||
          std::fabs(nq - sum_q) > la * std::max(1.0, sum_q)) {
        out.push_back({"dr-aggregation", n.id, t, np - sum_p, la,
                       "nodal reduction does not match its zone sum"});
      }
    }
    for (const auto& n : s.gas_nodes) {
      if (!n.in_dr) continue;
      double sum_f = 0.0;
      for (const auto& z : s.zones) {
        if (z.gn == n.id) sum_f += sched.at(nm(fam::drf, z.id, t));
      }
      const double nf = sched.at(nm(fam::ndrf, n.id, t));
      if (std::fabs(nf - sum_f) > la * std::max(1.0, sum_f)) {
        out.push_back({"dr-aggregation", n.id, t, nf - sum_f, la,
                       "nodal gas reduction does not match its zone sum"});
      }
    }
  }
  return out;
}

}  // namespace gridmender::validate
