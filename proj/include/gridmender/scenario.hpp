#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gridmender/linearize.hpp"

namespace gridmender::scenario {

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class ParseError : public ScenarioError {
 public:
  using ScenarioError::ScenarioError;
};
class ReferenceError : public ScenarioError {
 public:
  using ScenarioError::ScenarioError;
};
class InvariantError : public ScenarioError {
 public:
  using ScenarioError::ScenarioError;
};

struct TimeGrid {
  int horizon_steps = 1;    // scheduling slots 1..D
  double step_hours = 1.0;  // duration of one slot
};

struct PowerNode {
  std::string id;
  std::vector<double> p_demand;  // kW per slot
  std::vector<double> q_demand;  // kvar per slot
  double load_weight = 1.0;
  double v2_min = 0.0;  // squared p.u. voltage bounds
  double v2_max = 0.0;
  bool in_dr = false;
};

struct Branch {
  std::string id;
  std::string from, to;      // oriented source-to-load
  double resistance = 0.0;   // squared-voltage drop per kW
  double reactance = 0.0;    // squared-voltage drop per kvar
  double capacity = 0.0;     // apparent kVA
  bool damaged = false;
  std::string site;          // travel site, required when damaged and crews exist
};

struct GasNode {
  std::string id;
  std::vector<double> f_demand;  // Sm3/h per slot
  double load_weight = 1.0;
  double pi2_min = 0.0;  // squared pressure bounds
  double pi2_max = 0.0;
  bool in_dr = false;
};

enum class PipeKind { Passive, Compressor };

struct Pipeline {
  std::string id;
  std::string from, to;  // suction-to-discharge for compressors
  PipeKind kind = PipeKind::Passive;
  double weymouth_k = 0.0;  // pressure^2 per flow^2, passive only
  double flow_max = 0.0;    // Sm3/h
  // compressor-only fields
  double ratio_min = 0.0, ratio_max = 0.0;  // squared-pressure boost window is ratio^2
  double power_coeff = 0.0;                 // kW per Sm3/h moved
  double power_factor = 0.0;
  std::string supply_pn;  // power node feeding the drive
};

struct GasSource {
  std::string id;
  std::string node;
  std::vector<double> out_min, out_max;  // Sm3/h per slot
};

enum class FuelKind { Gas, Diesel, Dual };

struct FuelMode {
  linearize::PiecewiseCurve curve;  // fuel per slot as a function of kW output
  double p_max = 0.0;
};

struct GeneratorSpec {
  std::string id;
  std::string node;  // power node
  FuelKind fuel = FuelKind::Diesel;
  std::optional<FuelMode> gas_mode;
  std::optional<FuelMode> diesel_mode;
  double q_max = 0.0;
  double s_app = 0.0;
  int max_switches = 3;   // dual-fuel mode changes over the horizon
  std::string gas_node;   // set when the unit can draw from the gas network
  // declared onsite depots (validated against depot node/fuel); draw ledgers
  // are matched by node, so these are cross-checks rather than wiring
  std::vector<std::string> onsite_storage;

  double p_cap() const {
    double p = 0.0;
    if (gas_mode) p = std::max(p, gas_mode->p_max);
    if (diesel_mode) p = std::max(p, diesel_mode->p_max);
    return p;
  }
};

struct EnergyStorageSpec {
  std::string id;
  std::string node;
  double energy_capacity = 0.0;  // kWh
  double eff_ch = 1.0, eff_dch = 1.0;
  double p_ch_max = 0.0, p_dch_max = 0.0;
  double soc_min = 0.0, soc_max = 1.0, soc_initial = 0.5;
  double q_max = 0.0;
  double s_app = 0.0;
};

enum class DepotKind { Onsite, DieselReservoir, NgdsStorage };

struct StorageDepot {
  std::string id;
  FuelKind fuel = FuelKind::Diesel;  // Gas or Diesel only
  DepotKind kind = DepotKind::Onsite;
  double capacity = 0.0;     // Sm3 or liters
  double initial_fill = 0.0;
  std::string node;   // power node hosting an onsite depot (unit co-location)
  std::string site;   // travel site id for tanker access
  // ngds_storage only
  std::string gas_node;
  std::string supply_pn;
  double eff_inj = 1.0, eff_wd = 1.0;
  double inj_max = 0.0, wd_max = 0.0;
  double power_coeff_inj = 0.0, power_coeff_wd = 0.0;
  double power_factor = 0.0;
};

enum class MobileKind { RepairUnit, GasTanker, DieselTanker };

struct MobileResource {
  std::string id;
  MobileKind kind = MobileKind::RepairUnit;
  std::string initial_site;
  // tankers only
  double capacity = 0.0;
  double initial_fill = 0.0;
  double in_max = 0.0;   // max refuel received per slot
  double out_max = 0.0;  // max fuel delivered per slot
  std::vector<std::string> accessible_sites;
};

struct TravelTimeTable {
  std::vector<std::string> sites;
  std::vector<std::vector<int>> tau;  // whole slots, symmetric, zero diagonal

  std::optional<int> site_index(const std::string& site) const;
  int between(const std::string& a, const std::string& b) const;
};

struct DrZone {
  std::string id;  // defaults to "<gn>:<pn>"
  std::string gn, pn;
  std::vector<double> base_p;  // kW per slot
  std::vector<double> base_f;  // Sm3/h per slot
  double power_factor = 0.0;   // kvar reduction per kW reduction
  double sig_p_min = 0.0, sig_p_max = 0.0;
  double sig_n_min = 0.0, sig_n_max = 0.0;
  int tp_max = 0, tp_du_max = 0, tp_du_min = 0, tp_int_min = 0;
  int tn_max = 0, tn_du_max = 0, tn_du_min = 0, tn_int_min = 0;
  double h_cap = 1.0;
};

struct IncidenceMatrix {
  std::vector<std::string> gns;  // rows
  std::vector<std::string> pns;  // columns
  std::vector<std::uint8_t> cells;

  std::uint8_t at(size_t row, size_t col) const { return cells[row * pns.size() + col]; }
  int ones() const;
  std::vector<int> row_sums() const;
  std::vector<int> col_sums() const;
};

struct RepairProfile {
  std::string facility;       // damaged branch id
  std::vector<double> beta;   // health gain per slot for y = 0..fleet co-located crews
};

struct ObjectiveWeights {
  double zeta1 = 1.0;  // supplied electricity
  double zeta2 = 1.0;  // supplied gas
  double o1 = 1e-3;    // relaxation gap
  double o2 = 1e-3;    // mobile deployment
  double o3 = 1e-3;    // fuel-exchange activity
  double o4 = 1e-3;    // generation fuel
};

struct ToleranceConfig {
  int polygon_sides = 12;
  int weymouth_tangents = 5;
  double big_m_fallback = 1e6;
  double linear_abs = 1e-6;
  double circle_rel = 1e-6;
  double weymouth_rel = 1e-2;
  double ledger_abs = 1e-6;
};

struct Finding {
  std::string code;     // short family tag, e.g. "non-radial-epds"
  std::string entity;   // offending id, may be empty
  int ts = 0;           // 1-based slot, 0 when not slot-specific
  std::string message;
};

/// Immutable problem instance; safe to share across threads once loaded.
struct Scenario {
  TimeGrid time;
  std::vector<PowerNode> power_nodes;
  std::vector<Branch> branches;
  std::vector<GasNode> gas_nodes;
  std::vector<Pipeline> pipelines;
  std::vector<GasSource> sources;
  std::vector<GeneratorSpec> generators;
  std::vector<EnergyStorageSpec> energy_storages;
  std::vector<StorageDepot> depots;
  std::vector<MobileResource> mobiles;
  TravelTimeTable travel;
  std::vector<DrZone> zones;
  std::vector<RepairProfile> repair;
  ObjectiveWeights weights;
  ToleranceConfig tolerances;

  // resolved indexes (by id)
  std::map<std::string, int> pn_index, gn_index, branch_index, pipe_index, source_index,
      gen_index, ess_index, depot_index, mobile_index, zone_index, repair_index;

  int steps() const { return time.horizon_steps; }
  double dt() const { return time.step_hours; }

  const PowerNode& pn(const std::string& id) const;
  const GasNode& gn(const std::string& id) const;
  const Branch& branch(const std::string& id) const;
  const StorageDepot* depot_at_node(const std::string& pn_id, FuelKind fuel) const;
  const RepairProfile& profile_for(const std::string& branch_id) const;
  std::vector<const Branch*> damaged_branches() const;
  std::vector<const MobileResource*> fleet(MobileKind kind) const;
  /// Depots a tanker may exchange fuel with, resolved through its site list.
  std::vector<const StorageDepot*> reachable_depots(const MobileResource& tanker) const;
  /// The power node's root flag: true when no branch points into it.
  bool is_root_pn(const std::string& pn_id) const;
};

Scenario load_scenario(const std::filesystem::path& path);

IncidenceMatrix build_incidence(const std::vector<DrZone>& zones,
                                const std::vector<GasNode>& gns,
                                const std::vector<PowerNode>& pns);

/// Structural findings: EPDS radiality/spanning, NGDS connectivity, zone base
/// loads fitting under node base loads. Empty list means structurally sound.
std::vector<Finding> validate_topology(const Scenario& s);

}  // namespace gridmender::scenario
