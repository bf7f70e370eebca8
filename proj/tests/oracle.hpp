#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "gridmender/milp.hpp"

// Exhaustive search over every assignment of the binary columns with an LP
// resolve on the continuous remainder at each leaf. Independent of the
// branch-and-bound search: no objective bounding is used anywhere, so the
// result is the true mixed-integer optimum. With `prefix_prune` set, a
// subtree whose prefix LP relaxation is already infeasible is skipped;
// every completion of an infeasible prefix is infeasible, so the search
// stays exhaustive. Rows whose support is entirely fixed binaries are
// checked arithmetically first to keep the LP count down.
namespace oracle {

struct Result {
  bool feasible = false;
  double objective = 0.0;
  long lp_solves = 0;
};

inline Result enumerate_best(const gridmender::milp::Model& m, bool prefix_prune = true) {
  using namespace gridmender::milp;
  std::vector<int> bin_cols;
  for (const auto& v : m.variables()) {
    if (v.kind == VarKind::Binary) bin_cols.push_back(v.col);
  }
  std::vector<double> lo, up;
  for (const auto& v : m.variables()) {
    lo.push_back(v.lower);
    up.push_back(v.upper);
  }

  // rows fully supported on binary columns, re-checked arithmetically once
  // their last column gets fixed
  std::vector<char> is_bin(m.num_variables(), 0);
  std::vector<int> fix_depth(m.num_variables(), -1);
  for (size_t d = 0; d < bin_cols.size(); ++d) fix_depth[bin_cols[d]] = static_cast<int>(d);
  for (int c : bin_cols) is_bin[c] = 1;
  struct BinRow {
    const Constraint* row;
    int last_depth;
  };
  std::vector<std::vector<BinRow>> rows_by_depth(bin_cols.size() + 1);
  for (const auto& row : m.constraints()) {
    bool all_bin = !row.terms.empty();
    int last = -1;
    for (const auto& [col, coeff] : row.terms) {
      (void)coeff;
      if (!is_bin[col]) {
        all_bin = false;
        break;
      }
      last = std::max(last, fix_depth[col]);
    }
    if (all_bin && last >= 0) rows_by_depth[last].push_back({&row, last});
  }

  Result best;
  std::vector<std::optional<Basis>> warm(bin_cols.size() + 1);

  auto violates_fixed_rows = [&](size_t depth) {
    for (const BinRow& br : rows_by_depth[depth]) {
      double acc = 0.0;
      for (const auto& [col, coeff] : br.row->terms) acc += coeff * lo[col];
      const double tol = 1e-9;
      switch (br.row->sense) {
        case Sense::LessEq:
          if (acc > br.row->rhs + tol) return true;
          break;
        case Sense::GreaterEq:
          if (acc < br.row->rhs - tol) return true;
          break;
        case Sense::Eq:
          if (std::fabs(acc - br.row->rhs) > tol) return true;
          break;
      }
    }
    return false;
  };

  auto dfs = [&](auto&& self, size_t depth) -> void {
    if (depth == bin_cols.size()) {
      const Basis* w = depth > 0 && warm[depth - 1] ? &*warm[depth - 1] : nullptr;
      LpResult lp = solve_lp(m, lo, up, w);
      ++best.lp_solves;
      if (lp.status != SolveStatus::Optimal) return;
      if (!best.feasible || lp.objective > best.objective) {
        best.feasible = true;
        best.objective = lp.objective;
      }
      return;
    }
    for (int value = 0; value <= 1; ++value) {
      const int col = bin_cols[depth];
      lo[col] = up[col] = value;
      if (!violates_fixed_rows(depth)) {
        bool descend = true;
        if (prefix_prune) {
          const Basis* w = depth > 0 && warm[depth - 1] ? &*warm[depth - 1] : nullptr;
          LpResult lp = solve_lp(m, lo, up, w);
          ++best.lp_solves;
          if (lp.status != SolveStatus::Optimal) {
            descend = false;
          } else {
            warm[depth] = std::move(lp.basis);
          }
        }
        if (descend) self(self, depth + 1);
      }
      lo[col] = m.variable(col).lower;
      up[col] = m.variable(col).upper;
    }
  };
  dfs(dfs, 0);
  return best;
}

}  // namespace oracle
