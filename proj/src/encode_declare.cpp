#include <cmath>
#include <set>

#include "encode_util.hpp"
#include "gridmender/linearize.hpp"

namespace gridmender::encode {

using scenario::DepotKind;
using scenario::FuelKind;
using scenario::MobileKind;
using scenario::PipeKind;
using scenario::Scenario;

std::string nm(std::string_view fam, std::string_view a, int t) {
  std::string out;
  out.reserve(fam.size() + a.size() + 8);
  out.append(fam).push_back('.');
  out.append(a).append(".t").append(std::to_string(t));
  return out;
}

std::string nm2(std::string_view fam, std::string_view a, std::string_view b, int t) {
  std::string out;
  out.reserve(fam.size() + a.size() + b.size() + 9);
  out.append(fam).push_back('.');
  out.append(a).push_back('.');
  out.append(b).append(".t").append(std::to_string(t));
  return out;
}

std::string nmi(std::string_view fam, std::string_view a, char tag, int idx, int t) {
  std::string out;
  out.reserve(fam.size() + a.size() + 12);
  out.append(fam).push_back('.');
  out.append(a).push_back('.');
  out.push_back(tag);
  out.append(std::to_string(idx)).append(".t").append(std::to_string(t));
  return out;
}

namespace detail {

double fuel_curve_big_m(const linearize::PiecewiseCurve& curve, double p_max) {
  double m = curve.max_value();
  for (const auto& seg : curve.segments()) {
    m = std::max(m, seg.slope * p_max + seg.intercept);
  }
  return m;
}

std::vector<const scenario::GeneratorSpec*> gas_units_at_node(const Scenario& s,
                                                              const std::string& pn_id) {
  std::vector<const scenario::GeneratorSpec*> out;
  for (const auto& g : s.generators) {
    if (g.node == pn_id && g.fuel != FuelKind::Diesel) out.push_back(&g);
  }
  return out;
}

std::vector<const scenario::GeneratorSpec*> diesel_units_at_node(const Scenario& s,
                                                                 const std::string& pn_id) {
  std::vector<const scenario::GeneratorSpec*> out;
  for (const auto& g : s.generators) {
    if (g.node == pn_id && g.fuel != FuelKind::Gas) out.push_back(&g);
  }
  return out;
}

std::vector<std::string> mobile_sites(const scenario::MobileResource& mob) {
  std::set<std::string> sites(mob.accessible_sites.begin(), mob.accessible_sites.end());
  sites.insert(mob.initial_site);
  return {sites.begin(), sites.end()};
}

}  // namespace detail

void declare_variables(const Scenario& s, milp::Model& m) {
  using milp::VarKind;
  const int D = s.steps();

  for (const auto& n : s.power_nodes) {
    for (int t = 1; t <= D; ++t) {
      m.add_variable(nm(fam::pick_p, n.id, t), 0, 1, VarKind::Binary);
    }
  }
  for (const auto& n : s.gas_nodes) {
    for (int t = 1; t <= D; ++t) {
      m.add_variable(nm(fam::pick_n, n.id, t), 0, 1, VarKind::Binary);
    }
  }
  for (const auto& n : s.power_nodes) {
    for (int t = 1; t <= D; ++t) {
      m.add_variable(nm(fam::v2, n.id, t), n.v2_min, n.v2_max, VarKind::Continuous);
    }
  }
  for (const auto& n : s.gas_nodes) {
    for (int t = 1; t <= D; ++t) {
      m.add_variable(nm(fam::pr2, n.id, t), n.pi2_min, n.pi2_max, VarKind::Continuous);
    }
  }
  for (const auto& b : s.branches) {
    for (int t = 1; t <= D; ++t) {
      m.add_variable(nm(fam::fp, b.id, t), -b.capacity, b.capacity, VarKind::Continuous);
      m.add_variable(nm(fam::fq, b.id, t), -b.capacity, b.capacity, VarKind::Continuous);
    }
  }
  for (const auto& p : s.pipelines) {
    const double lo = p.kind == PipeKind::Compressor ? 0.0 : -p.flow_max;
    for (int t = 1; t <= D; ++t) {
      m.add_variable(nm(fam::gf, p.id, t), lo, p.flow_max, VarKind::Continuous);
    }
  }

  for (const auto& g : s.generators) {
    const bool dual = g.fuel == FuelKind::Dual;
    for (int t = 1; t <= D; ++t) {
      m.add_variable(nm(fam::pgen, g.id, t), 0, g.p_cap(), VarKind::Continuous);
      m.add_variable(nm(fam::qgen, g.id, t), 0, g.q_max, VarKind::Continuous);
      if (g.gas_mode) {
        const double maxc = detail::fuel_curve_big_m(g.gas_mode->curve, g.gas_mode->p_max);
        m.add_variable(nm(fam::cgas, g.id, t), 0, maxc, VarKind::Continuous);
        for (size_t l = 0; l < g.gas_mode->curve.segments().size(); ++l) {
          m.add_variable(nmi(fam::segg, g.id, 'l', static_cast<int>(l + 1), t), 0, 1,
                         VarKind::Binary);
        }
      }
      if (g.diesel_mode) {
        const double maxc = detail::fuel_curve_big_m(g.diesel_mode->curve, g.diesel_mode->p_max);
        m.add_variable(nm(fam::cdsl, g.id, t), 0, maxc, VarKind::Continuous);
        for (size_t l = 0; l < g.diesel_mode->curve.segments().size(); ++l) {
          m.add_variable(nmi(fam::segd, g.id, 'l', static_cast<int>(l + 1), t), 0, 1,
                         VarKind::Binary);
        }
      }
      if (dual) {
        m.add_variable(nm(fam::pmodg, g.id, t), 0, g.gas_mode->p_max, VarKind::Continuous);
        m.add_variable(nm(fam::pmodd, g.id, t), 0, g.diesel_mode->p_max, VarKind::Continuous);
        m.add_variable(nm(fam::zmodg, g.id, t), 0, 1, VarKind::Binary);
        m.add_variable(nm(fam::zmodd, g.id, t), 0, 1, VarKind::Binary);
        if (t >= 2) m.add_variable(nm(fam::swf, g.id, t), 0, 1, VarKind::Binary);
      }
      if (!g.gas_node.empty()) {
        const double maxc = detail::fuel_curve_big_m(g.gas_mode->curve, g.gas_mode->p_max);
        m.add_variable(nm(fam::gdraw, g.id, t), 0, maxc / s.dt(), VarKind::Continuous);
      }
    }
  }

  for (const auto& e : s.energy_storages) {
    for (int t = 1; t <= D; ++t) {
      m.add_variable(nm(fam::pgen, e.id, t), -e.p_ch_max, e.p_dch_max, VarKind::Continuous);
      m.add_variable(nm(fam::qgen, e.id, t), -e.q_max, e.q_max, VarKind::Continuous);
      m.add_variable(nm(fam::soc, e.id, t), e.soc_min, e.soc_max, VarKind::Continuous);
      m.add_variable(nm(fam::pch, e.id, t), 0, e.p_ch_max, VarKind::Continuous);
      m.add_variable(nm(fam::pdch, e.id, t), 0, e.p_dch_max, VarKind::Continuous);
      m.add_variable(nm(fam::chon, e.id, t), 0, 1, VarKind::Binary);
      m.add_variable(nm(fam::dchon, e.id, t), 0, 1, VarKind::Binary);
    }
  }

  for (const auto& d : s.depots) {
    for (int t = 1; t <= D; ++t) {
      m.add_variable(nm(fam::fill, d.id, t), 0, d.capacity, VarKind::Continuous);
      if (d.kind == DepotKind::NgdsStorage) {
        m.add_variable(nm(fam::ginj, d.id, t), 0, d.inj_max, VarKind::Continuous);
        m.add_variable(nm(fam::gwd, d.id, t), 0, d.wd_max, VarKind::Continuous);
        m.add_variable(nm(fam::gstg, d.id, t), -d.inj_max, d.wd_max, VarKind::Continuous);
        m.add_variable(nm(fam::injon, d.id, t), 0, 1, VarKind::Binary);
        m.add_variable(nm(fam::wdon, d.id, t), 0, 1, VarKind::Binary);
        m.add_variable(nm(fam::pstg, d.id, t), 0,
                       d.power_coeff_inj * d.inj_max + d.power_coeff_wd * d.wd_max,
                       VarKind::Continuous);
      }
    }
  }

  for (const auto& mob : s.mobiles) {
    if (mob.kind == MobileKind::RepairUnit) continue;
    for (int t = 1; t <= D; ++t) {
      m.add_variable(nm(fam::fill, mob.id, t), 0, mob.capacity, VarKind::Continuous);
    }
    for (const auto* dep : s.reachable_depots(mob)) {
      for (int t = 1; t <= D; ++t) {
        m.add_variable(nm2(fam::xfer, mob.id, dep->id, t), -mob.in_max, mob.out_max,
                       VarKind::Continuous);
        m.add_variable(nm2(fam::xen, mob.id, dep->id, t), 0, 1, VarKind::Binary);
      }
    }
  }

  for (const auto& mob : s.mobiles) {
    for (const std::string& site : detail::mobile_sites(mob)) {
      for (int t = 1; t <= D; ++t) {
        const bool pinned = t == 1 && site == mob.initial_site;
        m.add_variable(nm2(fam::parked, mob.id, site, t), pinned ? 1 : 0, 1, VarKind::Binary);
        m.add_variable(nm2(fam::moving, mob.id, site, t), 0, t == 1 ? 0 : 1, VarKind::Binary);
      }
    }
  }

  const int fleet = static_cast<int>(s.fleet(MobileKind::RepairUnit).size());
  for (const auto* b : s.damaged_branches()) {
    for (int t = 1; t <= D; ++t) {
      for (int y = 0; y <= fleet; ++y) {
        m.add_variable(nmi(fam::crew, b->id, 'y', y, t), 0, 1, VarKind::Binary);
      }
      m.add_variable(nm(fam::reff, b->id, t), 0, 1, VarKind::Continuous);
      // back-in-service flag; pinned off in the first slot
      m.add_variable(nm(fam::fixed, b->id, t), 0, t == 1 ? 0 : 1, VarKind::Binary);
    }
  }

  for (const auto& z : s.zones) {
    double max_p = 0.0, max_f = 0.0;
    for (int t = 0; t < D; ++t) {
      max_p = std::max(max_p, z.sig_p_max * z.base_p[t]);
      max_f = std::max(max_f, z.sig_n_max * z.base_f[t]);
    }
    for (int t = 1; t <= D; ++t) {
      m.add_variable(nm(fam::dronp, z.id, t), 0, 1, VarKind::Binary);
      m.add_variable(nm(fam::dronn, z.id, t), 0, 1, VarKind::Binary);
      m.add_variable(nm(fam::drp, z.id, t), 0, max_p, VarKind::Continuous);
      m.add_variable(nm(fam::drq, z.id, t), 0, std::fabs(z.power_factor) * max_p,
                     VarKind::Continuous);
      m.add_variable(nm(fam::drf, z.id, t), 0, max_f, VarKind::Continuous);
    }
  }
  for (const auto& n : s.power_nodes) {
    if (!n.in_dr) continue;
    double max_p = 0.0, max_q = 0.0;
    for (const auto& z : s.zones) {
      if (z.pn != n.id) continue;
      for (int t = 0; t < D; ++t) {
        max_p += z.sig_p_max * z.base_p[t];
        max_q += std::fabs(z.power_factor) * z.sig_p_max * z.base_p[t];
      }
    }
    for (int t = 1; t <= D; ++t) {
      m.add_variable(nm(fam::ndrp, n.id, t), 0, max_p, VarKind::Continuous);
      m.add_variable(nm(fam::ndrq, n.id, t), 0, max_q, VarKind::Continuous);
    }
  }
  for (const auto& n : s.gas_nodes) {
    if (!n.in_dr) continue;
    double max_f = 0.0;
    for (const auto& z : s.zones) {
      if (z.gn != n.id) continue;
      for (int t = 0; t < D; ++t) max_f += z.sig_n_max * z.base_f[t];
    }
    for (int t = 1; t <= D; ++t) {
      m.add_variable(nm(fam::ndrf, n.id, t), 0, max_f, VarKind::Continuous);
    }
  }

  for (const auto& src : s.sources) {
    for (int t = 1; t <= D; ++t) {
      m.add_variable(nm(fam::gsrc, src.id, t), src.out_min[t - 1], src.out_max[t - 1],
                     VarKind::Continuous);
    }
  }

  for (const auto& p : s.pipelines) {
    if (p.kind == PipeKind::Compressor) {
      for (int t = 1; t <= D; ++t) {
        m.add_variable(nm(fam::compon, p.id, t), 0, 1, VarKind::Binary);
        m.add_variable(nm(fam::pcom, p.id, t), 0, p.power_coeff * p.flow_max,
                       VarKind::Continuous);
      }
      continue;
    }
    const auto& from = s.gn(p.from);
    const auto& to = s.gn(p.to);
    const double press_m = std::max(from.pi2_max - to.pi2_min, to.pi2_max - from.pi2_min) +
                           p.weymouth_k * p.flow_max * p.flow_max;
    const int tangents = s.tolerances.weymouth_tangents;
    for (int t = 1; t <= D; ++t) {
      m.add_variable(nm(fam::wdir, p.id, t), 0, 1, VarKind::Binary);
      m.add_variable(nm(fam::wgap, p.id, t), 0, press_m, VarKind::Continuous);
      for (int l = 0; l < tangents; ++l) {
        m.add_variable(nmi(fam::wwin, p.id, 'k', l + 1, t), 0, 1, VarKind::Binary);
      }
    }
  }
}

milp::Model assemble(const Scenario& s) {
  auto findings = scenario::validate_topology(s);
  if (!findings.empty()) {
    throw scenario::InvariantError("scenario is structurally unsound: " + findings.front().message);
  }
  milp::Model m("gridmender");
  declare_variables(s, m);
  encode_fuel_consumption(s, m);
  encode_dual_fuel(s, m);
  encode_fuel_exchange(s, m);
  encode_generation_storage(s, m);
  encode_dr(s, m);
  encode_repair(s, m);
  encode_mobility(s, m);
  encode_epds(s, m);
  encode_ngds(s, m);
  build_objective(s, m);
  return m;
}

double Schedule::at(const std::string& name) const {
  auto it = values.find(name);
  if (it == values.end()) throw DecodeError("schedule has no value for '" + name + "'");
  return it->second;
}

double Schedule::at_or(const std::string& name, double fallback) const {
  auto it = values.find(name);
  return it == values.end() ? fallback : it->second;
}

Schedule decode(const Scenario& s, const milp::Model& m, const milp::Solution& sol) {
  using milp::SolveStatus;
  if (sol.status != SolveStatus::Optimal && sol.status != SolveStatus::Feasible &&
      sol.status != SolveStatus::Limit) {
    throw DecodeError("cannot decode a solution with status '" +
                      std::string(milp::to_string(sol.status)) + "'");
  }
  if (static_cast<int>(sol.values.size()) != m.num_variables()) {
    throw DecodeError("solution carries " + std::to_string(sol.values.size()) +
                      " values for a model with " + std::to_string(m.num_variables()) +
                      " columns");
  }
  Schedule out;
  out.steps = s.steps();
  out.dt = s.dt();
  out.values.reserve(m.registry().size());
  for (const auto& var : m.variables()) {
    double v = sol.values[var.col];
    if (var.kind == milp::VarKind::Binary) {
      const double r = std::round(v);
      if (std::fabs(v - r) > 1e-4) {
        throw DecodeError("binary column '" + var.name + "' is " + std::to_string(v) +
                          ", beyond the 1e-4 rounding tolerance");
      }
      v = r;
    }
    out.values.emplace(var.name, v);
  }

  out.supplied_power.assign(s.steps(), 0.0);
  out.supplied_gas.assign(s.steps(), 0.0);
  for (int t = 1; t <= s.steps(); ++t) {
    double pw = 0.0;
    for (const auto& n : s.power_nodes) {
      double served = out.at(nm(fam::pick_p, n.id, t)) * n.p_demand[t - 1];
      if (n.in_dr) served -= out.at(nm(fam::ndrp, n.id, t));
      pw += n.load_weight * served;
    }
    out.supplied_power[t - 1] = pw * s.dt();
    double gw = 0.0;
    for (const auto& n : s.gas_nodes) {
      double served = out.at(nm(fam::pick_n, n.id, t)) * n.f_demand[t - 1];
      if (n.in_dr) served -= out.at(nm(fam::ndrf, n.id, t));
      gw += n.load_weight * served;
    }
    out.supplied_gas[t - 1] = gw * s.dt();
  }
  return out;
}

}  // namespace gridmender::encode
