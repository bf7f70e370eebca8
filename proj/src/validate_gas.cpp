#include <cmath>

#include "gridmender/validate.hpp"

namespace gridmender::validate {

using encode::nm;
using encode::Schedule;
using scenario::DepotKind;
using scenario::PipeKind;
using scenario::Scenario;
namespace fam = encode::fam;

std::vector<Violation> check_gas(const Scenario& s, const Schedule& sched, const Tolerances& tol) {
  std::vector<Violation> out;
  const double la = tol.linear_abs;

  for (int t = 1; t <= s.steps(); ++t) {
    for (const auto& n : s.gas_nodes) {
      double f = 0.0, scale = 0.0;
      auto tally = [&](double v) {
        f += v;
        scale += std::fabs(v);
      };
      for (const auto& p : s.pipelines) {
        if (p.to == n.id) tally(sched.at(nm(fam::gf, p.id, t)));
        if (p.from == n.id) tally(-sched.at(nm(fam::gf, p.id, t)));
      }
      for (const auto& src : s.sources) {
        if (src.node == n.id) tally(sched.at(nm(fam::gsrc, src.id, t)));
      }
      for (const auto& d : s.depots) {
        if (d.kind == DepotKind::NgdsStorage && d.gas_node == n.id) {
          tally(sched.at(nm(fam::gstg, d.id, t)));
        }
      }
      tally(-sched.at(nm(fam::pick_n, n.id, t)) * n.f_demand[t - 1]);
      if (n.in_dr) tally(sched.at(nm(fam::ndrf, n.id, t)));
      for (const auto& g : s.generators) {
        if (g.gas_node == n.id) tally(-sched.at(nm(fam::gdraw, g.id, t)));
      }
      if (std::fabs(f) > la * std::max(1.0, scale)) {
        out.push_back({"gas-balance", n.id, t, f, la * std::max(1.0, scale),
                       "nodal gas flow does not balance"});
      }

      const double pr2 = sched.at(nm(fam::pr2, n.id, t));
      if (pr2 < n.pi2_min - la || pr2 > n.pi2_max + la) {
        out.push_back({"pressure-band", n.id, t, pr2, 0.0, "squared pressure outside its band"});
      }
      if (t >= 2 &&
          sched.at(nm(fam::pick_n, n.id, t - 1)) > sched.at(nm(fam::pick_n, n.id, t)) + la) {
        out.push_back({"gas-pickup-monotonicity", n.id, t, 0.0, 0.0,
                       "restored gas load was shed"});
      }
    }

    for (const auto& src : s.sources) {
      const double v = sched.at(nm(fam::gsrc, src.id, t));
      if (v < src.out_min[t - 1] - la || v > src.out_max[t - 1] + la) {
        out.push_back({"source-band", src.id, t, v, src.out_max[t - 1],
                       "source output outside its injection limits"});
      }
    }

    for (const auto& p : s.pipelines) {
      if (p.kind == PipeKind::Passive) {
        // exact nonconvex relation, no relaxation
        const double flow = sched.at(nm(fam::gf, p.id, t));
        const double d = sched.at(nm(fam::pr2, p.from, t)) - sched.at(nm(fam::pr2, p.to, t));
        const double sign = flow > 0.0 ? 1.0 : (flow < 0.0 ? -1.0 : 0.0);
        const double residual = std::fabs(d - sign * p.weymouth_k * flow * flow);
        const double limit =
            tol.weymouth_rel * std::max(p.weymouth_k * p.flow_max * p.flow_max, 1.0);
        if (residual > limit) {
          out.push_back({"weymouth", p.id, t, residual, limit,
                         "pressure drop off the exact flow relation"});
        }
        if (std::fabs(flow) > p.flow_max + la) {
          out.push_back({"pipe-capacity", p.id, t, std::fabs(flow), p.flow_max,
                         "flow beyond pipeline capacity"});
        }
        continue;
      }

      const double flow = sched.at(nm(fam::gf, p.id, t));
      const double on = sched.at(nm(fam::compon, p.id, t));
      const double power = sched.at(nm(fam::pcom, p.id, t));
      const double pr_in = sched.at(nm(fam::pr2, p.from, t));
      const double pr_out = sched.at(nm(fam::pr2, p.to, t));
      if (flow < -la || flow > p.flow_max + la) {
        out.push_back({"pipe-capacity", p.id, t, flow, p.flow_max,
                       "compressor flow outside its band"});
      }
      if (on > 0.5) {
        const double lo = p.ratio_min * p.ratio_min * pr_in;
        const double hi = p.ratio_max * p.ratio_max * pr_in;
        const double scale = std::max(1.0, std::fabs(pr_in) + std::fabs(pr_out));
        if (pr_out < lo - la * scale || pr_out > hi + la * scale) {
          out.push_back({"compressor-ratio", p.id, t, pr_out, hi,
                         "discharge pressure outside the powered boost window"});
        }
        const double resid = power - p.power_coeff * flow;
        if (std::fabs(resid) > la * std::max(1.0, std::fabs(power) + std::fabs(flow))) {
          out.push_back({"compressor-power", p.id, t, resid, la,
                         "drive power off its flow proportionality"});
        }
        const double pick = sched.at(nm(fam::pick_p, p.supply_pn, t));
        if (pick < 0.5) {
          out.push_back({"compressor-supply", p.id, t, on, 1.0,
                         "compressor powered while its supply node is dark"});
        }
      } else {
        const double diff = pr_in - pr_out;
        if (std::fabs(diff) > la * std::max(1.0, std::fabs(pr_in))) {
          out.push_back({"compressor-bypass", p.id, t, diff, la,
                         "bypassed compressor with unequal suction and discharge pressures"});
        }
        if (power > la) {
          out.push_back({"compressor-power", p.id, t, power, la,
                         "unpowered compressor drawing power"});
        }
      }
    }

    for (const auto& d : s.depots) {
      if (d.kind != DepotKind::NgdsStorage) continue;
      const double inj = sched.at(nm(fam::ginj, d.id, t));
      const double wd = sched.at(nm(fam::gwd, d.id, t));
      const double net = sched.at(nm(fam::gstg, d.id, t));
      const double power = sched.at(nm(fam::pstg, d.id, t));
      if (sched.at(nm(fam::injon, d.id, t)) > 0.5 && sched.at(nm(fam::wdon, d.id, t)) > 0.5) {
        out.push_back({"store-exclusivity", d.id, t, 2.0, 1.0,
                       "store injecting and withdrawing in the same slot"});
      }
      if (inj > sched.at(nm(fam::injon, d.id, t)) * d.inj_max + la ||
          wd > sched.at(nm(fam::wdon, d.id, t)) * d.wd_max + la) {
        out.push_back({"store-flow-band", d.id, t, std::max(inj, wd), 0.0,
                       "store exchange flow beyond its gated band"});
      }
      if (std::fabs(net - (wd - inj)) > la * std::max(1.0, wd + inj)) {
        out.push_back({"store-net", d.id, t, net - (wd - inj), la,
                       "net release does not match injection/withdrawal"});
      }
      const double expect = d.power_coeff_inj * inj + d.power_coeff_wd * wd;
      if (std::fabs(power - expect) > la * std::max(1.0, expect)) {
        out.push_back({"store-power", d.id, t, power - expect, la,
                       "store power draw off its exchange flows"});
      }
    }
  }
  return out;
}

}  // namespace gridmender::validate
