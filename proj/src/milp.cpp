#include "gridmender/milp.hpp"

#include <algorithm>
#include <cmath>

namespace gridmender::milp {

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::Limit: return "limit";
  }
  return "unknown";
}

std::optional<SolveStatus> status_from_string(std::string_view word) {
  if (word == "optimal") return SolveStatus::Optimal;
  if (word == "feasible") return SolveStatus::Feasible;
  if (word == "infeasible") return SolveStatus::Infeasible;
  if (word == "unbounded") return SolveStatus::Unbounded;
  if (word == "limit") return SolveStatus::Limit;
  return std::nullopt;
}

int Model::add_variable(const std::string& name, double lower, double upper, VarKind kind) {
  if (name.empty() || name.size() > 255) {
    throw ModelError("variable name must be 1..255 characters: '" + name + "'");
  }
  if (name.find_first_of(" \t\n") != std::string::npos) {
    throw ModelError("variable name contains whitespace: '" + name + "'");
  }
  if (columns_by_name_.contains(name)) {
    throw ModelError("duplicate variable name '" + name + "'");
  }
  if (!(lower <= upper)) {
    throw ModelError("variable '" + name + "' has empty bound interval");
  }
  if (kind == VarKind::Binary && (lower < 0.0 || upper > 1.0)) {
    throw ModelError("binary variable '" + name + "' must have bounds within [0,1]");
  }
  const int col = static_cast<int>(vars_.size());
  vars_.push_back(Variable{col, name, lower, upper, kind});
  objective_.push_back(0.0);
  columns_by_name_.emplace(name, col);
  if (kind == VarKind::Binary) ++num_binaries_;
  return col;
}

int Model::add_constraint(const std::string& name, std::vector<std::pair<int, double>> terms,
                          Sense sense, double rhs) {
  if (name.empty() || name.size() > 255) {
    throw ModelError("row name must be 1..255 characters: '" + name + "'");
  }
  if (rows_by_name_.contains(name)) {
    throw ModelError("duplicate row name '" + name + "'");
  }
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (size_t i = 0; i < terms.size(); ++i) {
    const auto& [col, coeff] = terms[i];
    if (col < 0 || col >= num_variables()) {
      throw ModelError("row '" + name + "' references unknown column " + std::to_string(col));
    }
    if (!std::isfinite(coeff)) {
      throw ModelError("row '" + name + "' has a non-finite coefficient");
    }
    if (i > 0 && terms[i - 1].first == col) {
      throw ModelError("row '" + name + "' repeats column '" + vars_[col].name + "'");
    }
  }
  if (!std::isfinite(rhs)) {
    throw ModelError("row '" + name + "' has a non-finite right-hand side");
  }
  const int row = static_cast<int>(rows_.size());
  rows_.push_back(Constraint{row, name, std::move(terms), sense, rhs});
  rows_by_name_.emplace(name, row);
  return row;
}

void Model::add_objective(int col, double coeff) {
  if (col < 0 || col >= num_variables()) {
    throw ModelError("objective references unknown column " + std::to_string(col));
  }
  if (!std::isfinite(coeff)) {
    throw ModelError("objective coefficient for '" + vars_[col].name + "' is not finite");
  }
  objective_[static_cast<size_t>(col)] += coeff;
}

int Model::column(std::string_view name) const {
  if (auto col = find_column(name)) return *col;
  throw ModelError("unknown column '" + std::string(name) + "'");
}

std::optional<int> Model::find_column(std::string_view name) const {
  auto it = columns_by_name_.find(std::string(name));
  if (it == columns_by_name_.end()) return std::nullopt;
  return it->second;
}

}  // namespace gridmender::milp
