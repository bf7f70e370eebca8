#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gridmender::milp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarKind : std::uint8_t { Continuous, Binary };
enum class Sense : std::uint8_t { LessEq, Eq, GreaterEq };
enum class SolveStatus : std::uint8_t { Optimal, Feasible, Infeasible, Unbounded, Limit };

std::string_view to_string(SolveStatus s);
std::optional<SolveStatus> status_from_string(std::string_view word);

struct Variable {
  int col = -1;
  std::string name;
  double lower = 0.0;
  double upper = kInf;
  VarKind kind = VarKind::Continuous;
};

struct Constraint {
  int row = -1;
  std::string name;
  std::vector<std::pair<int, double>> terms;  // (column, coefficient), sorted by column
  Sense sense = Sense::LessEq;
  double rhs = 0.0;
};

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sparse mixed-integer linear program. Objective sense is always maximize;
/// every variable name doubles as the registry key used to decode solutions.
class Model {
 public:
  explicit Model(std::string name = "model") : name_(std::move(name)) {}

  int add_variable(const std::string& name, double lower, double upper, VarKind kind);
  int add_constraint(const std::string& name, std::vector<std::pair<int, double>> terms,
                     Sense sense, double rhs);
  /// Accumulates onto the column's objective coefficient.
  void add_objective(int col, double coeff);

  int column(std::string_view name) const;  // throws ModelError when missing
  std::optional<int> find_column(std::string_view name) const;
  bool has_column(std::string_view name) const { return find_column(name).has_value(); }

  const Variable& variable(int col) const { return vars_.at(static_cast<size_t>(col)); }
  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<Constraint>& constraints() const { return rows_; }
  const std::vector<double>& objective() const { return objective_; }
  const std::unordered_map<std::string, int>& registry() const { return columns_by_name_; }
  const std::string& name() const { return name_; }

  int num_variables() const { return static_cast<int>(vars_.size()); }
  int num_constraints() const { return static_cast<int>(rows_.size()); }
  int num_binaries() const { return num_binaries_; }

 private:
  std::string name_;
  std::vector<Variable> vars_;
  std::vector<Constraint> rows_;
  std::vector<double> objective_;
  std::unordered_map<std::string, int> columns_by_name_;
  std::unordered_map<std::string, int> rows_by_name_;
  int num_binaries_ = 0;
};

struct Solution {
  SolveStatus status = SolveStatus::Infeasible;
  double objective = 0.0;
  std::vector<double> values;  // indexed by column; empty when no point is available

  double value(int col) const { return values.at(static_cast<size_t>(col)); }
};

struct SolveLimits {
  long node_cap = 2000000;
  double time_cap_s = 0.0;  // 0 means unlimited
  double gap_tol = 1e-6;
  int column_guard = 2000;  // builtin solver refuses larger models unless raised
};

/// Reference solver: bounded-variable primal simplex plus best-first
/// branch-and-bound over the binary columns. Deterministic by construction.
Solution solve_builtin(const Model& m, const SolveLimits& limits = {});

/// Variable statuses carried between related solves (parent/child LPs).
enum class BasisStat : std::uint8_t { Basic, AtLower, AtUpper, FreeAtZero };

struct Basis {
  std::vector<int> basic_rows;        // variable index basic in each row
  std::vector<BasisStat> statuses;    // one per variable incl. slacks
  bool valid() const { return !basic_rows.empty(); }
};

struct LpResult {
  SolveStatus status = SolveStatus::Infeasible;
  double objective = 0.0;
  std::vector<double> values;  // structural columns only
  Basis basis;
};

/// Solves the LP relaxation with per-column bound overrides (used by the
/// branch-and-bound tree and by enumeration-style tests).
LpResult solve_lp(const Model& m, const std::vector<double>& lower,
                  const std::vector<double>& upper, const Basis* warm = nullptr);

}  // namespace gridmender::milp
