#include "gridmender/scenario.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace gridmender::scenario {

std::optional<int> TravelTimeTable::site_index(const std::string& site) const {
  for (size_t i = 0; i < sites.size(); ++i) {
    if (sites[i] == site) return static_cast<int>(i);
  }
  return std::nullopt;
}

int TravelTimeTable::between(const std::string& a, const std::string& b) const {
  auto ia = site_index(a);
  auto ib = site_index(b);
  if (!ia || !ib) {
    throw ReferenceError("travel table does not cover site '" + (!ia ? a : b) + "'");
  }
  return tau[*ia][*ib];
}

int IncidenceMatrix::ones() const {
  return std::accumulate(cells.begin(), cells.end(), 0,
                         [](int acc, std::uint8_t v) { return acc + (v ? 1 : 0); });
}

std::vector<int> IncidenceMatrix::row_sums() const {
  std::vector<int> sums(gns.size(), 0);
  for (size_t r = 0; r < gns.size(); ++r) {
    for (size_t c = 0; c < pns.size(); ++c) sums[r] += at(r, c) ? 1 : 0;
  }
  return sums;
}

std::vector<int> IncidenceMatrix::col_sums() const {
  std::vector<int> sums(pns.size(), 0);
  for (size_t r = 0; r < gns.size(); ++r) {
    for (size_t c = 0; c < pns.size(); ++c) sums[c] += at(r, c) ? 1 : 0;
  }
  return sums;
}

const PowerNode& Scenario::pn(const std::string& id) const {
  auto it = pn_index.find(id);
  if (it == pn_index.end()) throw ReferenceError("unknown power node '" + id + "'");
  return power_nodes[it->second];
}

const GasNode& Scenario::gn(const std::string& id) const {
  auto it = gn_index.find(id);
  if (it == gn_index.end()) throw ReferenceError("unknown gas node '" + id + "'");
  return gas_nodes[it->second];
}

const Branch& Scenario::branch(const std::string& id) const {
  auto it = branch_index.find(id);
  if (it == branch_index.end()) throw ReferenceError("unknown branch '" + id + "'");
  return branches[it->second];
}

const StorageDepot* Scenario::depot_at_node(const std::string& pn_id, FuelKind fuel) const {
  for (const auto& d : depots) {
    if (d.kind == DepotKind::Onsite && d.node == pn_id && d.fuel == fuel) return &d;
  }
  return nullptr;
}

const RepairProfile& Scenario::profile_for(const std::string& branch_id) const {
  auto it = repair_index.find(branch_id);
  if (it == repair_index.end()) {
    throw ReferenceError("no repair profile for damaged facility '" + branch_id + "'");
  }
  return repair[it->second];
}

std::vector<const Branch*> Scenario::damaged_branches() const {
  std::vector<const Branch*> out;
  for (const auto& b : branches) {
    if (b.damaged) out.push_back(&b);
  }
  return out;
}

std::vector<const MobileResource*> Scenario::fleet(MobileKind kind) const {
  std::vector<const MobileResource*> out;
  for (const auto& m : mobiles) {
    if (m.kind == kind) out.push_back(&m);
  }
  return out;
}

std::vector<const StorageDepot*> Scenario::reachable_depots(const MobileResource& tanker) const {
  const FuelKind fuel = tanker.kind == MobileKind::GasTanker ? FuelKind::Gas : FuelKind::Diesel;
  std::vector<const StorageDepot*> out;
  for (const std::string& site : tanker.accessible_sites) {
    for (const auto& d : depots) {
      if (d.site == site && d.fuel == fuel) out.push_back(&d);
    }
  }
  return out;
}

bool Scenario::is_root_pn(const std::string& pn_id) const {
  for (const auto& b : branches) {
    if (b.to == pn_id) return false;
  }
  return true;
}

IncidenceMatrix build_incidence(const std::vector<DrZone>& zones,
                                const std::vector<GasNode>& gns,
                                const std::vector<PowerNode>& pns) {
  IncidenceMatrix mat;
  mat.gns.reserve(gns.size());
  for (const auto& g : gns) mat.gns.push_back(g.id);
  mat.pns.reserve(pns.size());
  for (const auto& p : pns) mat.pns.push_back(p.id);
  mat.cells.assign(mat.gns.size() * mat.pns.size(), 0);

  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& z : zones) {
    if (!seen.emplace(z.gn, z.pn).second) {
      throw InvariantError("duplicate zone pair (" + z.gn + ", " + z.pn + ")");
    }
    auto git = std::find(mat.gns.begin(), mat.gns.end(), z.gn);
    auto pit = std::find(mat.pns.begin(), mat.pns.end(), z.pn);
    if (git == mat.gns.end()) throw ReferenceError("zone references unknown gas node '" + z.gn + "'");
    if (pit == mat.pns.end()) throw ReferenceError("zone references unknown power node '" + z.pn + "'");
    const size_t r = static_cast<size_t>(git - mat.gns.begin());
    const size_t c = static_cast<size_t>(pit - mat.pns.begin());
    mat.cells[r * mat.pns.size() + c] = 1;
  }
  return mat;
}

std::vector<Finding> validate_topology(const Scenario& s) {
  std::vector<Finding> findings;

  // EPDS: the branch graph (damaged branches count as present) must be a
  // tree spanning all power nodes with a single root.
  {
    std::vector<int> roots;
    for (const auto& n : s.power_nodes) {
      if (s.is_root_pn(n.id)) roots.push_back(s.pn_index.at(n.id));
    }
    if (static_cast<int>(s.branches.size()) != std::max(0, (int)s.power_nodes.size() - 1) ||
        roots.size() != 1) {
      findings.push_back({"non-radial-epds", "", 0,
                          "EPDS branch graph is not a rooted tree: " +
                              std::to_string(s.branches.size()) + " branches, " +
                              std::to_string(roots.size()) + " root(s) over " +
                              std::to_string(s.power_nodes.size()) + " nodes"});
    } else {
      // reachability from the root over undirected branches
      std::vector<std::vector<int>> adj(s.power_nodes.size());
      bool cycle = false;
      std::vector<int> indeg(s.power_nodes.size(), 0);
      for (const auto& b : s.branches) {
        const int u = s.pn_index.at(b.from);
        const int v = s.pn_index.at(b.to);
        adj[u].push_back(v);
        adj[v].push_back(u);
        if (++indeg[v] > 1) cycle = true;
      }
      std::vector<char> seen(s.power_nodes.size(), 0);
      std::vector<int> stack{roots[0]};
      seen[roots[0]] = 1;
      size_t reached = 1;
      while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int v : adj[u]) {
          if (!seen[v]) {
            seen[v] = 1;
            ++reached;
            stack.push_back(v);
          }
        }
      }
      if (cycle || reached != s.power_nodes.size()) {
        findings.push_back({"non-radial-epds", "", 0,
                            cycle ? "EPDS branch graph contains a cycle"
                                  : "EPDS branch graph does not span all power nodes"});
      }
    }
  }

  // NGDS: pipelines must connect all gas nodes.
  if (!s.gas_nodes.empty()) {
    std::vector<std::vector<int>> adj(s.gas_nodes.size());
    for (const auto& p : s.pipelines) {
      const int u = s.gn_index.at(p.from);
      const int v = s.gn_index.at(p.to);
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    std::vector<char> seen(s.gas_nodes.size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    size_t reached = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v : adj[u]) {
        if (!seen[v]) {
          seen[v] = 1;
          ++reached;
          stack.push_back(v);
        }
      }
    }
    if (reached != s.gas_nodes.size()) {
      findings.push_back({"disconnected-ngds", "", 0, "NGDS pipeline graph is not connected"});
    }
  }

  // zone base loads must fit under their node base loads, slot by slot
  for (int t = 0; t < s.steps(); ++t) {
    std::map<std::string, double> p_sum, f_sum;
    for (const auto& z : s.zones) {
      p_sum[z.pn] += z.base_p[t];
      f_sum[z.gn] += z.base_f[t];
    }
    for (const auto& [pn_id, sum] : p_sum) {
      if (sum > s.pn(pn_id).p_demand[t] + 1e-9) {
        findings.push_back({"zone-exceeds-node", pn_id, t + 1,
                            "zone base power at '" + pn_id + "' exceeds node demand in slot " +
                                std::to_string(t + 1)});
      }
    }
    for (const auto& [gn_id, sum] : f_sum) {
      if (sum > s.gn(gn_id).f_demand[t] + 1e-9) {
        findings.push_back({"zone-exceeds-node", gn_id, t + 1,
                            "zone base gas at '" + gn_id + "' exceeds node demand in slot " +
                                std::to_string(t + 1)});
      }
    }
  }

  // fuel-burning units need a fuel path unless their curve is identically zero
  for (const auto& g : s.generators) {
    const bool burns_gas = g.fuel != FuelKind::Diesel;
    const bool burns_diesel = g.fuel != FuelKind::Gas;
    if (burns_gas && g.gas_mode && g.gas_mode->curve.max_value() > 0.0) {
      if (g.gas_node.empty() && s.depot_at_node(g.node, FuelKind::Gas) == nullptr) {
        findings.push_back({"unit-without-fuel", g.id, 0,
                            "gas-burning unit '" + g.id +
                                "' has neither a gas-network tap nor an onsite gas depot"});
      }
    }
    if (burns_diesel && g.diesel_mode && g.diesel_mode->curve.max_value() > 0.0) {
      if (s.depot_at_node(g.node, FuelKind::Diesel) == nullptr) {
        findings.push_back({"unit-without-fuel", g.id, 0,
                            "diesel-burning unit '" + g.id + "' has no onsite diesel depot"});
      }
    }
  }

  return findings;
}

}  // namespace gridmender::scenario
