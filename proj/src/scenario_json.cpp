#include <cmath>

#include <algorithm>
#include <fstream>
#include <set>

#include "gridmender/json_io.hpp"

namespace gridmender::scenario {

using nlohmann::json;

namespace {

[[noreturn]] void fail_parse(const std::string& what) { throw ParseError(what); }

const json& need(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail_parse(where + ": missing key '" + key + "'");
  return *it;
}

double num_field(const json& obj, const char* key, const std::string& where) {
  const json& v = need(obj, key, where);
  if (!v.is_number()) fail_parse(where + ": '" + std::string(key) + "' must be a number");
  return v.get<double>();
}

double num_or(const json& obj, const char* key, double fallback) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return fallback;
  return it->get<double>();
}

int int_field(const json& obj, const char* key, const std::string& where) {
  const json& v = need(obj, key, where);
  if (!v.is_number_integer()) fail_parse(where + ": '" + std::string(key) + "' must be an integer");
  return v.get<int>();
}

int int_or(const json& obj, const char* key, int fallback) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return fallback;
  return it->get<int>();
}

std::string str_field(const json& obj, const char* key, const std::string& where) {
  const json& v = need(obj, key, where);
  if (!v.is_string()) fail_parse(where + ": '" + std::string(key) + "' must be a string");
  return v.get<std::string>();
}

std::string str_or(const json& obj, const char* key, const std::string& fallback) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return fallback;
  return it->get<std::string>();
}

bool bool_or(const json& obj, const char* key, bool fallback) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return fallback;
  return it->get<bool>();
}

// per-slot series: scalars broadcast over the horizon
std::vector<double> series(const json& obj, const char* key, int steps, const std::string& where) {
  const json& v = need(obj, key, where);
  std::vector<double> out;
  if (v.is_number()) {
    out.assign(steps, v.get<double>());
    return out;
  }
  if (!v.is_array()) fail_parse(where + ": '" + std::string(key) + "' must be a number or array");
  if (static_cast<int>(v.size()) != steps) {
    fail_parse(where + ": '" + std::string(key) + "' has " + std::to_string(v.size()) +
               " entries, expected " + std::to_string(steps));
  }
  for (const auto& e : v) out.push_back(e.get<double>());
  return out;
}

FuelMode parse_mode(const json& obj, const std::string& where) {
  FuelMode mode;
  const json& segs = need(obj, "segments", where);
  if (!segs.is_array() || segs.empty()) fail_parse(where + ": 'segments' must be a nonempty array");
  std::vector<linearize::Segment> parsed;
  for (const auto& sj : segs) {
    linearize::Segment s;
    s.slope = num_field(sj, "a", where);
    s.intercept = num_field(sj, "b", where);
    s.p_lo = num_field(sj, "p_lo", where);
    s.p_hi = num_field(sj, "p_hi", where);
    if (s.slope < 0.0 || s.intercept < 0.0) {
      throw InvariantError(where + ": fuel-curve coefficients must be nonnegative");
    }
    parsed.push_back(s);
  }
  try {
    mode.curve = linearize::PiecewiseCurve::from_segments(std::move(parsed));
  } catch (const linearize::LinearizeError& e) {
    throw InvariantError(where + ": " + e.what());
  }
  mode.p_max = num_field(obj, "p_max", where);
  if (std::fabs(mode.curve.domain_min()) > 1e-9 ||
      std::fabs(mode.curve.domain_max() - mode.p_max) > 1e-9 * std::max(1.0, mode.p_max)) {
    throw InvariantError(where + ": fuel curve must cover [0, p_max]");
  }
  return mode;
}

template <typename T>
void sort_by_id(std::vector<T>& v) {
  std::sort(v.begin(), v.end(), [](const T& a, const T& b) { return a.id < b.id; });
}

template <typename T>
std::map<std::string, int> index_of(const std::vector<T>& v, const std::string& what) {
  std::map<std::string, int> idx;
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i].id.empty()) fail_parse(what + " entry " + std::to_string(i) + " has an empty id");
    if (!idx.emplace(v[i].id, static_cast<int>(i)).second) {
      throw InvariantError("duplicate " + what + " id '" + v[i].id + "'");
    }
  }
  return idx;
}

json series_json(const std::vector<double>& v) { return json(v); }

json mode_json(const FuelMode& m) {
  json segs = json::array();
  for (const auto& s : m.curve.segments()) {
    segs.push_back({{"a", s.slope}, {"b", s.intercept}, {"p_lo", s.p_lo}, {"p_hi", s.p_hi}});
  }
  return {{"segments", segs}, {"p_max", m.p_max}};
}

}  // namespace

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON in '" + path.string() + "': " + e.what());
  }
  return doc;
}

Scenario parse_scenario(const json& doc) {
  if (!doc.is_object()) fail_parse("scenario document must be a JSON object");
  Scenario s;

  const json& time = need(doc, "time", "time");
  s.time.horizon_steps = int_field(time, "horizon_steps", "time");
  s.time.step_hours = num_field(time, "step_hours", "time");
  if (s.time.horizon_steps < 1) throw InvariantError("time: horizon_steps must be >= 1");
  if (!(s.time.step_hours > 0.0)) throw InvariantError("time: step_hours must be positive");
  const int D = s.time.horizon_steps;

  for (const auto& j : need(doc, "power_nodes", "power_nodes")) {
    PowerNode n;
    n.id = str_field(j, "id", "power node");
    const std::string where = "power node '" + n.id + "'";
    n.p_demand = series(j, "base_active_demand", D, where);
    n.q_demand = series(j, "base_reactive_demand", D, where);
    n.load_weight = num_or(j, "load_weight", 1.0);
    n.v2_min = num_field(j, "v2_min", where);
    n.v2_max = num_field(j, "v2_max", where);
    n.in_dr = bool_or(j, "in_dr_set", false);
    if (!(0.0 < n.v2_min && n.v2_min < n.v2_max)) {
      throw InvariantError(where + ": need 0 < v2_min < v2_max");
    }
    if (n.load_weight < 0.0) throw InvariantError(where + ": load_weight must be >= 0");
    for (double v : n.p_demand) {
      if (v < 0.0) throw InvariantError(where + ": demands must be >= 0");
    }
    for (double v : n.q_demand) {
      if (v < 0.0) throw InvariantError(where + ": demands must be >= 0");
    }
    s.power_nodes.push_back(std::move(n));
  }
  sort_by_id(s.power_nodes);
  s.pn_index = index_of(s.power_nodes, "power node");

  for (const auto& j : need(doc, "branches", "branches")) {
    Branch b;
    b.id = str_field(j, "id", "branch");
    const std::string where = "branch '" + b.id + "'";
    b.from = str_field(j, "from", where);
    b.to = str_field(j, "to", where);
    b.resistance = num_field(j, "resistance", where);
    b.reactance = num_field(j, "reactance", where);
    b.capacity = num_field(j, "apparent_capacity", where);
    b.damaged = bool_or(j, "damaged", false);
    b.site = str_or(j, "site", "");
    if (b.from == b.to) throw InvariantError(where + ": from and to must differ");
    if (!(b.capacity > 0.0)) throw InvariantError(where + ": apparent_capacity must be positive");
    if (!s.pn_index.contains(b.from)) {
      throw ReferenceError(where + " references unknown node '" + b.from + "'");
    }
    if (!s.pn_index.contains(b.to)) {
      throw ReferenceError(where + " references unknown node '" + b.to + "'");
    }
    s.branches.push_back(std::move(b));
  }
  sort_by_id(s.branches);
  s.branch_index = index_of(s.branches, "branch");

  for (const auto& j : need(doc, "gas_nodes", "gas_nodes")) {
    GasNode n;
    n.id = str_field(j, "id", "gas node");
    const std::string where = "gas node '" + n.id + "'";
    n.f_demand = series(j, "base_gas_demand", D, where);
    n.load_weight = num_or(j, "load_weight", 1.0);
    n.pi2_min = num_field(j, "pi2_min", where);
    n.pi2_max = num_field(j, "pi2_max", where);
    n.in_dr = bool_or(j, "in_dr_set", false);
    if (!(0.0 <= n.pi2_min && n.pi2_min < n.pi2_max)) {
      throw InvariantError(where + ": need 0 <= pi2_min < pi2_max");
    }
    for (double v : n.f_demand) {
      if (v < 0.0) throw InvariantError(where + ": demands must be >= 0");
    }
    s.gas_nodes.push_back(std::move(n));
  }
  sort_by_id(s.gas_nodes);
  s.gn_index = index_of(s.gas_nodes, "gas node");

  for (const auto& j : need(doc, "pipelines", "pipelines")) {
    Pipeline p;
    p.id = str_field(j, "id", "pipeline");
    const std::string where = "pipeline '" + p.id + "'";
    p.from = str_field(j, "from", where);
    p.to = str_field(j, "to", where);
    const std::string kind = str_or(j, "kind", "passive");
    p.flow_max = num_field(j, "flow_capacity", where);
    if (!s.gn_index.contains(p.from)) {
      throw ReferenceError(where + " references unknown gas node '" + p.from + "'");
    }
    if (!s.gn_index.contains(p.to)) {
      throw ReferenceError(where + " references unknown gas node '" + p.to + "'");
    }
    if (!(p.flow_max > 0.0)) throw InvariantError(where + ": flow_capacity must be positive");
    if (kind == "passive") {
      p.kind = PipeKind::Passive;
      p.weymouth_k = num_field(j, "weymouth_K", where);
      if (!(p.weymouth_k > 0.0)) throw InvariantError(where + ": weymouth_K must be positive");
    } else if (kind == "compressor") {
      p.kind = PipeKind::Compressor;
      p.ratio_min = num_field(j, "ratio_min", where);
      p.ratio_max = num_field(j, "ratio_max", where);
      p.power_coeff = num_field(j, "power_coeff", where);
      p.power_factor = num_or(j, "power_factor", 0.0);
      p.supply_pn = str_field(j, "supply_pn", where);
      if (!(1.0 < p.ratio_min && p.ratio_min <= p.ratio_max)) {
        throw InvariantError(where + ": need 1 < ratio_min <= ratio_max");
      }
      if (!s.pn_index.contains(p.supply_pn)) {
        throw ReferenceError(where + " references unknown supply node '" + p.supply_pn + "'");
      }
    } else {
      fail_parse(where + ": kind must be 'passive' or 'compressor'");
    }
    s.pipelines.push_back(std::move(p));
  }
  sort_by_id(s.pipelines);
  s.pipe_index = index_of(s.pipelines, "pipeline");

  for (const auto& j : need(doc, "sources", "sources")) {
    GasSource g;
    g.id = str_field(j, "id", "gas source");
    const std::string where = "gas source '" + g.id + "'";
    g.node = str_field(j, "node", where);
    g.out_min = series(j, "out_min", D, where);
    g.out_max = series(j, "out_max", D, where);
    if (!s.gn_index.contains(g.node)) {
      throw ReferenceError(where + " references unknown gas node '" + g.node + "'");
    }
    for (int t = 0; t < D; ++t) {
      if (!(0.0 <= g.out_min[t] && g.out_min[t] <= g.out_max[t])) {
        throw InvariantError(where + ": need 0 <= out_min <= out_max in slot " +
                             std::to_string(t + 1));
      }
    }
    s.sources.push_back(std::move(g));
  }
  sort_by_id(s.sources);
  s.source_index = index_of(s.sources, "gas source");

  for (const auto& j : need(doc, "generators", "generators")) {
    GeneratorSpec g;
    g.id = str_field(j, "id", "generator");
    const std::string where = "generator '" + g.id + "'";
    g.node = str_field(j, "node", where);
    const std::string fuel = str_field(j, "fuel_kind", where);
    if (fuel == "gas") g.fuel = FuelKind::Gas;
    else if (fuel == "diesel") g.fuel = FuelKind::Diesel;
    else if (fuel == "dual") g.fuel = FuelKind::Dual;
    else fail_parse(where + ": fuel_kind must be gas|diesel|dual");
    if (auto it = j.find("gas"); it != j.end() && !it->is_null()) {
      g.gas_mode = parse_mode(*it, where + " gas mode");
    }
    if (auto it = j.find("diesel"); it != j.end() && !it->is_null()) {
      g.diesel_mode = parse_mode(*it, where + " diesel mode");
    }
    if (g.fuel == FuelKind::Gas && !g.gas_mode) throw InvariantError(where + ": missing gas mode");
    if (g.fuel == FuelKind::Diesel && !g.diesel_mode) {
      throw InvariantError(where + ": missing diesel mode");
    }
    if (g.fuel == FuelKind::Dual && (!g.gas_mode || !g.diesel_mode)) {
      throw InvariantError(where + ": dual unit needs both mode curves");
    }
    g.q_max = num_field(j, "q_max", where);
    g.s_app = num_field(j, "apparent_capacity", where);
    g.max_switches = int_or(j, "max_switches", 3);
    g.gas_node = str_or(j, "gas_node", "");
    if (auto it = j.find("onsite_storage"); it != j.end() && !it->is_null()) {
      if (it->is_string()) g.onsite_storage.push_back(it->get<std::string>());
      else if (it->is_array()) {
        for (const auto& e : *it) g.onsite_storage.push_back(e.get<std::string>());
      } else {
        fail_parse(where + ": onsite_storage must be an id or list of ids");
      }
    }
    if (!s.pn_index.contains(g.node)) {
      throw ReferenceError(where + " references unknown power node '" + g.node + "'");
    }
    if (!g.gas_node.empty()) {
      if (g.fuel == FuelKind::Diesel) {
        throw InvariantError(where + ": diesel unit cannot tap the gas network");
      }
      if (!s.gn_index.contains(g.gas_node)) {
        throw ReferenceError(where + " references unknown gas node '" + g.gas_node + "'");
      }
    }
    if (g.max_switches < 0) throw InvariantError(where + ": max_switches must be >= 0");
    s.generators.push_back(std::move(g));
  }
  sort_by_id(s.generators);
  s.gen_index = index_of(s.generators, "generator");

  for (const auto& j : need(doc, "energy_storages", "energy_storages")) {
    EnergyStorageSpec e;
    e.id = str_field(j, "id", "energy storage");
    const std::string where = "energy storage '" + e.id + "'";
    e.node = str_field(j, "node", where);
    e.energy_capacity = num_field(j, "energy_capacity", where);
    e.eff_ch = num_field(j, "eff_ch", where);
    e.eff_dch = num_field(j, "eff_dch", where);
    e.p_ch_max = num_field(j, "p_ch_max", where);
    e.p_dch_max = num_field(j, "p_dch_max", where);
    e.soc_min = num_field(j, "soc_min", where);
    e.soc_max = num_field(j, "soc_max", where);
    e.soc_initial = num_field(j, "soc_initial", where);
    e.q_max = num_field(j, "q_max", where);
    e.s_app = num_field(j, "apparent_capacity", where);
    if (!s.pn_index.contains(e.node)) {
      throw ReferenceError(where + " references unknown power node '" + e.node + "'");
    }
    if (!(e.eff_ch > 0.0 && e.eff_ch <= 1.0 && e.eff_dch > 0.0 && e.eff_dch <= 1.0)) {
      throw InvariantError(where + ": efficiencies must lie in (0, 1]");
    }
    if (!(0.0 <= e.soc_min && e.soc_min <= e.soc_initial && e.soc_initial <= e.soc_max &&
          e.soc_max <= 1.0)) {
      throw InvariantError(where + ": need soc_min <= soc_initial <= soc_max within [0, 1]");
    }
    if (!(e.energy_capacity > 0.0)) throw InvariantError(where + ": capacity must be positive");
    s.energy_storages.push_back(std::move(e));
  }
  sort_by_id(s.energy_storages);
  s.ess_index = index_of(s.energy_storages, "energy storage");

  for (const auto& j : need(doc, "depots", "depots")) {
    StorageDepot d;
    d.id = str_field(j, "id", "depot");
    const std::string where = "depot '" + d.id + "'";
    const std::string fuel = str_field(j, "fuel", where);
    if (fuel == "gas") d.fuel = FuelKind::Gas;
    else if (fuel == "diesel") d.fuel = FuelKind::Diesel;
    else fail_parse(where + ": fuel must be gas|diesel");
    const std::string kind = str_field(j, "kind", where);
    if (kind == "onsite") d.kind = DepotKind::Onsite;
    else if (kind == "diesel_reservoir") d.kind = DepotKind::DieselReservoir;
    else if (kind == "ngds_storage") d.kind = DepotKind::NgdsStorage;
    else fail_parse(where + ": kind must be onsite|diesel_reservoir|ngds_storage");
    d.capacity = num_field(j, "capacity", where);
    d.initial_fill = num_field(j, "initial_fill", where);
    d.node = str_or(j, "node", "");
    d.site = str_or(j, "site", "");
    if (!(0.0 <= d.initial_fill && d.initial_fill <= d.capacity)) {
      throw InvariantError(where + ": need 0 <= initial_fill <= capacity");
    }
    if (d.kind == DepotKind::Onsite) {
      if (d.node.empty()) throw InvariantError(where + ": onsite depot needs a host node");
      if (!s.pn_index.contains(d.node)) {
        throw ReferenceError(where + " references unknown power node '" + d.node + "'");
      }
    }
    if (d.kind == DepotKind::DieselReservoir && d.fuel != FuelKind::Diesel) {
      throw InvariantError(where + ": diesel_reservoir must hold diesel");
    }
    if (d.kind == DepotKind::NgdsStorage) {
      if (d.fuel != FuelKind::Gas) throw InvariantError(where + ": ngds_storage must hold gas");
      d.gas_node = str_field(j, "gas_node", where);
      d.supply_pn = str_field(j, "supply_pn", where);
      d.eff_inj = num_field(j, "eff_inj", where);
      d.eff_wd = num_field(j, "eff_wd", where);
      d.inj_max = num_field(j, "inj_max", where);
      d.wd_max = num_field(j, "wd_max", where);
      d.power_coeff_inj = num_field(j, "power_coeff_inj", where);
      d.power_coeff_wd = num_field(j, "power_coeff_wd", where);
      d.power_factor = num_or(j, "power_factor", 0.0);
      if (!s.gn_index.contains(d.gas_node)) {
        throw ReferenceError(where + " references unknown gas node '" + d.gas_node + "'");
      }
      if (!s.pn_index.contains(d.supply_pn)) {
        throw ReferenceError(where + " references unknown power node '" + d.supply_pn + "'");
      }
      if (!(d.eff_inj > 0.0 && d.eff_inj <= 1.0 && d.eff_wd > 0.0 && d.eff_wd <= 1.0)) {
        throw InvariantError(where + ": efficiencies must lie in (0, 1]");
      }
    }
    s.depots.push_back(std::move(d));
  }
  sort_by_id(s.depots);
  s.depot_index = index_of(s.depots, "depot");

  // one depot per (node, fuel) keeps draw ledgers unambiguous
  {
    std::set<std::pair<std::string, FuelKind>> seen;
    for (const auto& d : s.depots) {
      if (d.kind != DepotKind::Onsite) continue;
      if (!seen.emplace(d.node, d.fuel).second) {
        throw InvariantError("depot '" + d.id + "': node '" + d.node +
                             "' already hosts a depot of the same fuel");
      }
    }
    std::set<std::pair<std::string, FuelKind>> sites;
    for (const auto& d : s.depots) {
      if (d.site.empty()) continue;
      if (!sites.emplace(d.site, d.fuel).second) {
        throw InvariantError("depot '" + d.id + "': site '" + d.site +
                             "' already hosts a depot of the same fuel");
      }
    }
  }

  // generator onsite_storage declarations must match co-located depots
  for (const auto& g : s.generators) {
    for (const std::string& dep_id : g.onsite_storage) {
      auto it = s.depot_index.find(dep_id);
      if (it == s.depot_index.end()) {
        throw ReferenceError("generator '" + g.id + "' references unknown depot '" + dep_id + "'");
      }
      const StorageDepot& d = s.depots[it->second];
      if (d.kind != DepotKind::Onsite || d.node != g.node) {
        throw InvariantError("generator '" + g.id + "': depot '" + dep_id +
                             "' is not an onsite depot at node '" + g.node + "'");
      }
    }
  }

  const json& travel = need(doc, "travel", "travel");
  for (const auto& e : need(travel, "sites", "travel")) s.travel.sites.push_back(e.get<std::string>());
  {
    std::set<std::string> uniq(s.travel.sites.begin(), s.travel.sites.end());
    if (uniq.size() != s.travel.sites.size()) throw InvariantError("travel: duplicate site ids");
  }
  const json& tau = need(travel, "tau", "travel");
  const size_t ns = s.travel.sites.size();
  if (tau.size() != ns) fail_parse("travel: tau must have one row per site");
  s.travel.tau.assign(ns, std::vector<int>(ns, 0));
  for (size_t i = 0; i < ns; ++i) {
    if (tau[i].size() != ns) fail_parse("travel: tau row " + std::to_string(i) + " has wrong width");
    for (size_t k = 0; k < ns; ++k) s.travel.tau[i][k] = tau[i][k].get<int>();
  }
  for (size_t i = 0; i < ns; ++i) {
    if (s.travel.tau[i][i] != 0) {
      throw InvariantError("travel: tau diagonal must be zero at site '" + s.travel.sites[i] + "'");
    }
    for (size_t k = 0; k < ns; ++k) {
      if (s.travel.tau[i][k] != s.travel.tau[k][i]) {
        throw InvariantError("travel: tau must be symmetric (sites '" + s.travel.sites[i] +
                             "', '" + s.travel.sites[k] + "')");
      }
      if (i != k && s.travel.tau[i][k] < 1) {
        throw InvariantError("travel: tau must be >= 1 between distinct sites '" +
                             s.travel.sites[i] + "' and '" + s.travel.sites[k] + "'");
      }
    }
  }

  for (const auto& j : need(doc, "mobiles", "mobiles")) {
    MobileResource m;
    m.id = str_field(j, "id", "mobile");
    const std::string where = "mobile '" + m.id + "'";
    const std::string kind = str_field(j, "kind", where);
    if (kind == "repair_unit") m.kind = MobileKind::RepairUnit;
    else if (kind == "gas_tanker") m.kind = MobileKind::GasTanker;
    else if (kind == "diesel_tanker") m.kind = MobileKind::DieselTanker;
    else fail_parse(where + ": kind must be repair_unit|gas_tanker|diesel_tanker");
    m.initial_site = str_field(j, "initial_site", where);
    for (const auto& e : need(j, "accessible_sites", where)) {
      m.accessible_sites.push_back(e.get<std::string>());
    }
    if (m.kind != MobileKind::RepairUnit) {
      m.capacity = num_field(j, "capacity", where);
      m.initial_fill = num_field(j, "initial_fill", where);
      m.in_max = num_field(j, "in_max", where);
      m.out_max = num_field(j, "out_max", where);
      if (!(0.0 <= m.initial_fill && m.initial_fill <= m.capacity)) {
        throw InvariantError(where + ": need 0 <= initial_fill <= capacity");
      }
      if (m.in_max < 0.0 || m.out_max < 0.0) {
        throw InvariantError(where + ": transfer limits must be >= 0");
      }
    }
    if (!s.travel.site_index(m.initial_site)) {
      throw ReferenceError(where + ": initial site '" + m.initial_site +
                           "' is not in the travel table");
    }
    for (const std::string& site : m.accessible_sites) {
      if (!s.travel.site_index(site)) {
        throw ReferenceError(where + ": accessible site '" + site +
                             "' is not in the travel table");
      }
    }
    s.mobiles.push_back(std::move(m));
  }
  sort_by_id(s.mobiles);
  s.mobile_index = index_of(s.mobiles, "mobile");

  for (const auto& j : need(doc, "zones", "zones")) {
    DrZone z;
    z.gn = str_field(j, "gn", "zone");
    z.pn = str_field(j, "pn", "zone");
    z.id = str_or(j, "id", z.gn + ":" + z.pn);
    const std::string where = "zone '" + z.id + "'";
    z.base_p = series(j, "base_p", D, where);
    z.base_f = series(j, "base_f", D, where);
    z.power_factor = num_or(j, "power_factor", 0.0);
    z.sig_p_min = num_field(j, "sigma_p_min", where);
    z.sig_p_max = num_field(j, "sigma_p_max", where);
    z.sig_n_min = num_field(j, "sigma_n_min", where);
    z.sig_n_max = num_field(j, "sigma_n_max", where);
    z.tp_max = int_field(j, "tp_max", where);
    z.tp_du_max = int_field(j, "tp_du_max", where);
    z.tp_du_min = int_field(j, "tp_du_min", where);
    z.tp_int_min = int_field(j, "tp_int_min", where);
    z.tn_max = int_field(j, "tn_max", where);
    z.tn_du_max = int_field(j, "tn_du_max", where);
    z.tn_du_min = int_field(j, "tn_du_min", where);
    z.tn_int_min = int_field(j, "tn_int_min", where);
    z.h_cap = num_field(j, "h_cap", where);
    if (!s.gn_index.contains(z.gn)) {
      throw ReferenceError(where + " references unknown gas node '" + z.gn + "'");
    }
    if (!s.pn_index.contains(z.pn)) {
      throw ReferenceError(where + " references unknown power node '" + z.pn + "'");
    }
    auto check_sig = [&](double lo, double hi) {
      if (!(0.0 <= lo && lo <= hi && hi <= 1.0)) {
        throw InvariantError(where + ": reduction ratios must satisfy 0 <= min <= max <= 1");
      }
    };
    check_sig(z.sig_p_min, z.sig_p_max);
    check_sig(z.sig_n_min, z.sig_n_max);
    auto check_windows = [&](int t_max, int du_max, int du_min, int int_min) {
      if (t_max < 0 || du_max < 1 || du_min < 1 || int_min < 1) {
        throw InvariantError(where + ": window lengths must be positive");
      }
      if (!(du_min <= du_max && du_max <= std::max(t_max, 1))) {
        throw InvariantError(where + ": need du_min <= du_max <= t_max");
      }
    };
    check_windows(z.tp_max, z.tp_du_max, z.tp_du_min, z.tp_int_min);
    check_windows(z.tn_max, z.tn_du_max, z.tn_du_min, z.tn_int_min);
    if (!(z.h_cap > 0.0 && z.h_cap <= 2.0)) {
      throw InvariantError(where + ": h_cap must lie in (0, 2]");
    }
    s.zones.push_back(std::move(z));
  }
  sort_by_id(s.zones);
  s.zone_index = index_of(s.zones, "zone");
  {
    std::set<std::pair<std::string, std::string>> pairs;
    for (const auto& z : s.zones) {
      if (!pairs.emplace(z.gn, z.pn).second) {
        throw InvariantError("duplicate zone pair (" + z.gn + ", " + z.pn + ")");
      }
    }
  }
  // DR membership: the explicit flag or appearance in a zone
  for (const auto& z : s.zones) {
    s.power_nodes[s.pn_index.at(z.pn)].in_dr = true;
    s.gas_nodes[s.gn_index.at(z.gn)].in_dr = true;
  }

  const json& rep = need(doc, "repair", "repair");
  for (const auto& j : need(rep, "profiles", "repair")) {
    RepairProfile p;
    p.facility = str_field(j, "facility", "repair profile");
    const std::string where = "repair profile '" + p.facility + "'";
    for (const auto& e : need(j, "beta", where)) p.beta.push_back(e.get<double>());
    if (!s.branch_index.contains(p.facility)) {
      throw ReferenceError(where + " references unknown branch '" + p.facility + "'");
    }
    if (p.beta.empty() || p.beta.front() != 0.0) {
      throw InvariantError(where + ": beta must start at 0 for zero crews");
    }
    for (size_t y = 0; y < p.beta.size(); ++y) {
      if (p.beta[y] < 0.0 || p.beta[y] > 1.0) {
        throw InvariantError(where + ": beta values must lie in [0, 1]");
      }
      if (y > 0 && p.beta[y] < p.beta[y - 1]) {
        throw InvariantError(where + ": beta must be nondecreasing in crew count");
      }
    }
    s.repair.push_back(std::move(p));
  }
  std::sort(s.repair.begin(), s.repair.end(),
            [](const RepairProfile& a, const RepairProfile& b) { return a.facility < b.facility; });
  for (size_t i = 0; i < s.repair.size(); ++i) {
    if (!s.repair_index.emplace(s.repair[i].facility, static_cast<int>(i)).second) {
      throw InvariantError("duplicate repair profile for '" + s.repair[i].facility + "'");
    }
  }

  if (auto it = doc.find("weights"); it != doc.end() && !it->is_null()) {
    s.weights.zeta1 = num_or(*it, "zeta1", 1.0);
    s.weights.zeta2 = num_or(*it, "zeta2", 1.0);
    s.weights.o1 = num_or(*it, "o1", 1e-3);
    s.weights.o2 = num_or(*it, "o2", 1e-3);
    s.weights.o3 = num_or(*it, "o3", 1e-3);
    s.weights.o4 = num_or(*it, "o4", 1e-3);
  }
  for (double w : {s.weights.zeta1, s.weights.zeta2, s.weights.o1, s.weights.o2, s.weights.o3,
                   s.weights.o4}) {
    if (w < 0.0) throw InvariantError("weights must be >= 0");
  }

  if (auto it = doc.find("tolerances"); it != doc.end() && !it->is_null()) {
    const json& t = *it;
    s.tolerances.polygon_sides = int_or(t, "polygon_sides", 12);
    s.tolerances.weymouth_tangents = int_or(t, "weymouth_tangents", 5);
    s.tolerances.big_m_fallback = num_or(t, "big_m_fallback", 1e6);
    s.tolerances.linear_abs = num_or(t, "linear_abs", 1e-6);
    s.tolerances.circle_rel = num_or(t, "circle_rel", 1e-6);
    s.tolerances.weymouth_rel = num_or(t, "weymouth_rel", 1e-2);
    s.tolerances.ledger_abs = num_or(t, "ledger_abs", 1e-6);
  }
  if (s.tolerances.polygon_sides < 4 || s.tolerances.polygon_sides % 2 != 0) {
    throw InvariantError("tolerances: polygon_sides must be even and >= 4");
  }
  if (s.tolerances.weymouth_tangents < 2) {
    throw InvariantError("tolerances: weymouth_tangents must be >= 2");
  }
  for (double v : {s.tolerances.big_m_fallback, s.tolerances.linear_abs, s.tolerances.circle_rel,
                   s.tolerances.weymouth_rel, s.tolerances.ledger_abs}) {
    if (!(v > 0.0)) throw InvariantError("tolerances must be positive");
  }

  // ids shared across variable families must not collide
  for (const auto& e : s.energy_storages) {
    if (s.gen_index.contains(e.id)) {
      throw InvariantError("energy storage '" + e.id + "' reuses a generator id");
    }
  }
  for (const auto& mob : s.mobiles) {
    if (s.depot_index.contains(mob.id)) {
      throw InvariantError("mobile '" + mob.id + "' reuses a depot id");
    }
  }

  // remaining cross-checks that need the full document
  const int fleet_rus = static_cast<int>(s.fleet(MobileKind::RepairUnit).size());
  for (const Branch* b : s.damaged_branches()) {
    if (!s.repair_index.contains(b->id)) {
      throw ReferenceError("damaged branch '" + b->id + "' has no repair profile");
    }
    if (fleet_rus > 0 && b->site.empty()) {
      throw InvariantError("damaged branch '" + b->id + "' needs a travel site for crews");
    }
    if (!b->site.empty() && !s.travel.site_index(b->site)) {
      throw ReferenceError("damaged branch '" + b->id + "': site '" + b->site +
                           "' is not in the travel table");
    }
    const auto& beta = s.profile_for(b->id).beta;
    if (static_cast<int>(beta.size()) < fleet_rus + 1) {
      throw InvariantError("repair profile '" + b->id + "' covers " +
                           std::to_string(beta.size() - 1) + " crews but the fleet has " +
                           std::to_string(fleet_rus));
    }
  }
  {
    std::set<std::string> dmg_sites;
    for (const Branch* b : s.damaged_branches()) {
      if (!b->site.empty() && !dmg_sites.insert(b->site).second) {
        throw InvariantError("damaged branches share travel site '" + b->site + "'");
      }
    }
    for (const auto& m : s.mobiles) {
      if (m.kind != MobileKind::RepairUnit) continue;
      for (const std::string& site : m.accessible_sites) {
        if (!dmg_sites.contains(site) && site != m.initial_site) {
          throw InvariantError("repair unit '" + m.id + "' lists site '" + site +
                               "' which hosts no damaged facility");
        }
      }
    }
  }
  for (const auto& m : s.mobiles) {
    if (m.kind == MobileKind::RepairUnit) continue;
    if (s.reachable_depots(m).empty()) {
      throw ReferenceError("tanker '" + m.id + "' reaches no depot of its fuel through " +
                           "its accessible sites");
    }
  }

  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_json_file(path));
}

json to_json(const Scenario& s) {
  json doc;
  doc["time"] = {{"horizon_steps", s.time.horizon_steps}, {"step_hours", s.time.step_hours}};

  doc["power_nodes"] = json::array();
  for (const auto& n : s.power_nodes) {
    doc["power_nodes"].push_back({{"id", n.id},
                                  {"base_active_demand", series_json(n.p_demand)},
                                  {"base_reactive_demand", series_json(n.q_demand)},
                                  {"load_weight", n.load_weight},
                                  {"v2_min", n.v2_min},
                                  {"v2_max", n.v2_max},
                                  {"in_dr_set", n.in_dr}});
  }
  doc["branches"] = json::array();
  for (const auto& b : s.branches) {
    json j = {{"id", b.id},          {"from", b.from},
              {"to", b.to},          {"resistance", b.resistance},
              {"reactance", b.reactance}, {"apparent_capacity", b.capacity},
              {"damaged", b.damaged}};
    if (!b.site.empty()) j["site"] = b.site;
    doc["branches"].push_back(std::move(j));
  }
  doc["gas_nodes"] = json::array();
  for (const auto& n : s.gas_nodes) {
    doc["gas_nodes"].push_back({{"id", n.id},
                                {"base_gas_demand", series_json(n.f_demand)},
                                {"load_weight", n.load_weight},
                                {"pi2_min", n.pi2_min},
                                {"pi2_max", n.pi2_max},
                                {"in_dr_set", n.in_dr}});
  }
  doc["pipelines"] = json::array();
  for (const auto& p : s.pipelines) {
    json j = {{"id", p.id}, {"from", p.from}, {"to", p.to}, {"flow_capacity", p.flow_max}};
    if (p.kind == PipeKind::Passive) {
      j["kind"] = "passive";
      j["weymouth_K"] = p.weymouth_k;
    } else {
      j["kind"] = "compressor";
      j["ratio_min"] = p.ratio_min;
      j["ratio_max"] = p.ratio_max;
      j["power_coeff"] = p.power_coeff;
      j["power_factor"] = p.power_factor;
      j["supply_pn"] = p.supply_pn;
    }
    doc["pipelines"].push_back(std::move(j));
  }
  doc["sources"] = json::array();
  for (const auto& g : s.sources) {
    doc["sources"].push_back({{"id", g.id},
                              {"node", g.node},
                              {"out_min", series_json(g.out_min)},
                              {"out_max", series_json(g.out_max)}});
  }
  doc["generators"] = json::array();
  for (const auto& g : s.generators) {
    json j = {{"id", g.id},
              {"node", g.node},
              {"fuel_kind", g.fuel == FuelKind::Gas      ? "gas"
                            : g.fuel == FuelKind::Diesel ? "diesel"
                                                         : "dual"},
              {"q_max", g.q_max},
              {"apparent_capacity", g.s_app},
              {"max_switches", g.max_switches}};
    if (g.gas_mode) j["gas"] = mode_json(*g.gas_mode);
    if (g.diesel_mode) j["diesel"] = mode_json(*g.diesel_mode);
    if (!g.gas_node.empty()) j["gas_node"] = g.gas_node;
    if (!g.onsite_storage.empty()) j["onsite_storage"] = g.onsite_storage;
    doc["generators"].push_back(std::move(j));
  }
  doc["energy_storages"] = json::array();
  for (const auto& e : s.energy_storages) {
    doc["energy_storages"].push_back({{"id", e.id},
                                      {"node", e.node},
                                      {"energy_capacity", e.energy_capacity},
                                      {"eff_ch", e.eff_ch},
                                      {"eff_dch", e.eff_dch},
                                      {"p_ch_max", e.p_ch_max},
                                      {"p_dch_max", e.p_dch_max},
                                      {"soc_min", e.soc_min},
                                      {"soc_max", e.soc_max},
                                      {"soc_initial", e.soc_initial},
                                      {"q_max", e.q_max},
                                      {"apparent_capacity", e.s_app}});
  }
  doc["depots"] = json::array();
  for (const auto& d : s.depots) {
    json j = {{"id", d.id},
              {"fuel", d.fuel == FuelKind::Gas ? "gas" : "diesel"},
              {"kind", d.kind == DepotKind::Onsite            ? "onsite"
                       : d.kind == DepotKind::DieselReservoir ? "diesel_reservoir"
                                                              : "ngds_storage"},
              {"capacity", d.capacity},
              {"initial_fill", d.initial_fill}};
    if (!d.node.empty()) j["node"] = d.node;
    if (!d.site.empty()) j["site"] = d.site;
    if (d.kind == DepotKind::NgdsStorage) {
      j["gas_node"] = d.gas_node;
      j["supply_pn"] = d.supply_pn;
      j["eff_inj"] = d.eff_inj;
      j["eff_wd"] = d.eff_wd;
      j["inj_max"] = d.inj_max;
      j["wd_max"] = d.wd_max;
      j["power_coeff_inj"] = d.power_coeff_inj;
      j["power_coeff_wd"] = d.power_coeff_wd;
      j["power_factor"] = d.power_factor;
    }
    doc["depots"].push_back(std::move(j));
  }
  doc["mobiles"] = json::array();
  for (const auto& m : s.mobiles) {
    json j = {{"id", m.id},
              {"kind", m.kind == MobileKind::RepairUnit ? "repair_unit"
                       : m.kind == MobileKind::GasTanker ? "gas_tanker"
                                                         : "diesel_tanker"},
              {"initial_site", m.initial_site},
              {"accessible_sites", m.accessible_sites}};
    if (m.kind != MobileKind::RepairUnit) {
      j["capacity"] = m.capacity;
      j["initial_fill"] = m.initial_fill;
      j["in_max"] = m.in_max;
      j["out_max"] = m.out_max;
    }
    doc["mobiles"].push_back(std::move(j));
  }
  doc["travel"] = {{"sites", s.travel.sites}, {"tau", s.travel.tau}};
  doc["zones"] = json::array();
  for (const auto& z : s.zones) {
    doc["zones"].push_back({{"id", z.id},
                            {"gn", z.gn},
                            {"pn", z.pn},
                            {"base_p", series_json(z.base_p)},
                            {"base_f", series_json(z.base_f)},
                            {"power_factor", z.power_factor},
                            {"sigma_p_min", z.sig_p_min},
                            {"sigma_p_max", z.sig_p_max},
                            {"sigma_n_min", z.sig_n_min},
                            {"sigma_n_max", z.sig_n_max},
                            {"tp_max", z.tp_max},
                            {"tp_du_max", z.tp_du_max},
                            {"tp_du_min", z.tp_du_min},
                            {"tp_int_min", z.tp_int_min},
                            {"tn_max", z.tn_max},
                            {"tn_du_max", z.tn_du_max},
                            {"tn_du_min", z.tn_du_min},
                            {"tn_int_min", z.tn_int_min},
                            {"h_cap", z.h_cap}});
  }
  doc["repair"] = {{"profiles", json::array()}};
  for (const auto& p : s.repair) {
    doc["repair"]["profiles"].push_back({{"facility", p.facility}, {"beta", p.beta}});
  }
  doc["weights"] = {{"zeta1", s.weights.zeta1}, {"zeta2", s.weights.zeta2},
                    {"o1", s.weights.o1},       {"o2", s.weights.o2},
                    {"o3", s.weights.o3},       {"o4", s.weights.o4}};
  doc["tolerances"] = {{"polygon_sides", s.tolerances.polygon_sides},
                       {"weymouth_tangents", s.tolerances.weymouth_tangents},
                       {"big_m_fallback", s.tolerances.big_m_fallback},
                       {"linear_abs", s.tolerances.linear_abs},
                       {"circle_rel", s.tolerances.circle_rel},
                       {"weymouth_rel", s.tolerances.weymouth_rel},
                       {"ledger_abs", s.tolerances.ledger_abs}};
  return doc;
}

json apply_overlay(json doc, const json& overlay) {
  if (!overlay.contains("patch") || !overlay["patch"].is_array()) {
    throw ParseError("overlay must carry a 'patch' array");
  }
  for (const auto& op : overlay["patch"]) {
    const std::string kind = op.value("op", "");
    const std::string section = op.value("section", "");
    const std::string id = op.value("id", "");
    if (kind != "set" && kind != "remove") {
      throw ParseError("overlay op must be 'set' or 'remove'");
    }
    if (!doc.contains(section)) {
      throw ReferenceError("overlay references unknown section '" + section + "'");
    }
    json& sec = doc[section];

    if (!sec.is_array()) {  // scalar sections such as time/weights/tolerances
      if (!op.contains("field")) throw ParseError("overlay on '" + section + "' needs a field");
      const std::string field = op["field"].get<std::string>();
      if (kind == "set") sec[field] = op.at("value");
      else sec.erase(field);
      continue;
    }

    json* entity = nullptr;
    for (auto& e : sec) {
      const std::string eid =
          e.contains("id") ? e["id"].get<std::string>()
                           : (e.contains("facility") ? e["facility"].get<std::string>() : "");
      if (eid == id) {
        entity = &e;
        break;
      }
    }
    if (kind == "remove" && !op.contains("field")) {
      if (!entity) {
        throw ReferenceError("overlay removes unknown entity '" + id + "' in '" + section + "'");
      }
      json filtered = json::array();
      for (auto& e : sec) {
        if (&e != entity) filtered.push_back(e);
      }
      sec = std::move(filtered);
      continue;
    }
    if (!entity) {
      throw ReferenceError("overlay references unknown entity '" + id + "' in '" + section + "'");
    }
    const std::string field = op.value("field", "");
    if (field.empty()) throw ParseError("overlay 'set' needs a field");
    if (kind == "set") {
      (*entity)[field] = op.at("value");
    } else {
      entity->erase(field);
    }
  }
  return doc;
}

}  // namespace gridmender::scenario
