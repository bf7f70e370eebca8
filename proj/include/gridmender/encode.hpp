#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gridmender/milp.hpp"
#include "gridmender/scenario.hpp"

namespace gridmender::encode {

// Column and row names encode (family, entity ids, slot) so that external
// solutions decode without positional coupling, e.g. "pgen.g1.t3".
std::string nm(std::string_view fam, std::string_view a, int t);
std::string nm2(std::string_view fam, std::string_view a, std::string_view b, int t);
std::string nmi(std::string_view fam, std::string_view a, char tag, int idx, int t);

// Variable family codes.
namespace fam {
inline constexpr std::string_view pick_p = "pick_p";  // load pickup, power node
inline constexpr std::string_view pick_n = "pick_n";  // load pickup, gas node
inline constexpr std::string_view v2 = "v2";          // squared voltage
inline constexpr std::string_view pr2 = "pr2";        // squared pressure
inline constexpr std::string_view fp = "fp";          // branch active flow
inline constexpr std::string_view fq = "fq";          // branch reactive flow
inline constexpr std::string_view gf = "gf";          // pipeline gas flow
inline constexpr std::string_view pgen = "pgen";      // unit / storage active output
inline constexpr std::string_view qgen = "qgen";      // unit / storage reactive output
inline constexpr std::string_view cgas = "cgas";      // gas burned per slot
inline constexpr std::string_view cdsl = "cdsl";      // diesel burned per slot
inline constexpr std::string_view pmodg = "pmodg";    // dual unit output in gas mode
inline constexpr std::string_view pmodd = "pmodd";    // dual unit output in diesel mode
inline constexpr std::string_view zmodg = "zmodg";    // dual unit gas-mode flag
inline constexpr std::string_view zmodd = "zmodd";    // dual unit diesel-mode flag
inline constexpr std::string_view swf = "swf";        // dual unit switch flag
inline constexpr std::string_view segg = "segg";      // gas-curve segment selector
inline constexpr std::string_view segd = "segd";      // diesel-curve segment selector
inline constexpr std::string_view gdraw = "gdraw";    // unit draw from the gas network
inline constexpr std::string_view soc = "soc";        // storage state of charge
inline constexpr std::string_view pch = "pch";        // storage charging power
inline constexpr std::string_view pdch = "pdch";      // storage discharging power
inline constexpr std::string_view chon = "chon";      // charging flag
inline constexpr std::string_view dchon = "dchon";    // discharging flag
inline constexpr std::string_view fill = "fill";      // fuel inventory
inline constexpr std::string_view xfer = "xfer";      // tanker-to-depot fuel transfer
inline constexpr std::string_view xen = "xen";        // transfer-enable flag
inline constexpr std::string_view parked = "parked";  // mobile parked at site
inline constexpr std::string_view moving = "moving";  // mobile traveling toward site
inline constexpr std::string_view crew = "crew";      // crew-count selector
inline constexpr std::string_view reff = "reff";      // repair efficiency
inline constexpr std::string_view fixed = "fixed";    // facility back in service
inline constexpr std::string_view dronp = "dronp";    // power DR active in zone
inline constexpr std::string_view dronn = "dronn";    // gas DR active in zone
inline constexpr std::string_view drp = "drp";        // zone power reduction
inline constexpr std::string_view drq = "drq";        // zone reactive reduction
inline constexpr std::string_view drf = "drf";        // zone gas reduction
inline constexpr std::string_view ndrp = "ndrp";      // nodal power reduction
inline constexpr std::string_view ndrq = "ndrq";      // nodal reactive reduction
inline constexpr std::string_view ndrf = "ndrf";      // nodal gas reduction
inline constexpr std::string_view ginj = "ginj";      // store injection from the network
inline constexpr std::string_view gwd = "gwd";        // store withdrawal to the network
inline constexpr std::string_view gstg = "gstg";      // net release to the network
inline constexpr std::string_view injon = "injon";    // injection flag
inline constexpr std::string_view wdon = "wdon";      // withdrawal flag
inline constexpr std::string_view pstg = "pstg";      // store power draw
inline constexpr std::string_view gsrc = "gsrc";      // source output
inline constexpr std::string_view compon = "compon";  // compressor powered flag
inline constexpr std::string_view pcom = "pcom";      // compressor power draw
inline constexpr std::string_view wdir = "wdir";      // pipe flow-direction flag
inline constexpr std::string_view wgap = "wgap";      // pipe relaxation gap slack
inline constexpr std::string_view wwin = "wwin";      // pipe flow-window selector
}  // namespace fam

/// Compiles the scenario into a solver-agnostic model: declares the full
/// variable catalog, emits every constraint family, and sets the objective.
/// Column and row ordering is deterministic (entity id, then slot).
milp::Model assemble(const scenario::Scenario& s);

// Individual passes, exposed for targeted tests. All expect the variables
// declared by declare_variables.
void declare_variables(const scenario::Scenario& s, milp::Model& m);
void encode_fuel_consumption(const scenario::Scenario& s, milp::Model& m);
void encode_dual_fuel(const scenario::Scenario& s, milp::Model& m);
void encode_fuel_exchange(const scenario::Scenario& s, milp::Model& m);
void encode_generation_storage(const scenario::Scenario& s, milp::Model& m);
void encode_dr(const scenario::Scenario& s, milp::Model& m);
void encode_repair(const scenario::Scenario& s, milp::Model& m);
void encode_mobility(const scenario::Scenario& s, milp::Model& m);
void encode_epds(const scenario::Scenario& s, milp::Model& m);
void encode_ngds(const scenario::Scenario& s, milp::Model& m);
void build_objective(const scenario::Scenario& s, milp::Model& m);

/// Emits the DR activation-window rows (total duration, per-event duration,
/// inter-event gap) over the given activation columns. Reused directly by
/// the window-equivalence tests.
void emit_dr_window_rows(milp::Model& m, const std::vector<int>& gamma_cols, int total_max,
                         int du_max, int du_min, int int_min, const std::string& tag);

/// Emits the routing rows for one mobile over `sites` with x/y columns per
/// (site, slot): single-position, travel-time separation, arrival linkage,
/// and destination persistence. Initial parking is pinned via bounds by the
/// caller. Reused directly by the mobility-equivalence tests.
void emit_mobility_rows(milp::Model& m, const std::vector<std::vector<int>>& parked_cols,
                        const std::vector<std::vector<int>>& moving_cols,
                        const std::vector<std::vector<int>>& tau, int steps,
                        const std::string& tag);

/// Per-slot decoded values of every variable family, in engineering units.
struct Schedule {
  int steps = 0;
  double dt = 1.0;
  std::unordered_map<std::string, double> values;
  std::vector<double> supplied_power;  // weighted objective term per slot
  std::vector<double> supplied_gas;

  bool has(const std::string& name) const { return values.contains(name); }
  double at(const std::string& name) const;
  /// 0.0 for columns that were never declared (absent families).
  double at_or(const std::string& name, double fallback = 0.0) const;
};

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Decodes a solution into a Schedule: every registry column is consumed,
/// binaries are rounded to exact 0/1 (error beyond 1e-4), and the per-slot
/// supplied-energy totals are computed as in the objective.
Schedule decode(const scenario::Scenario& s, const milp::Model& m, const milp::Solution& sol);

}  // namespace gridmender::encode
