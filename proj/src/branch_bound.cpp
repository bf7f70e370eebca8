#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <queue>
#include <vector>

#include "gridmender/milp.hpp"

// Best-first branch-and-bound over the binary columns. Nodes are ordered by
// their parent's LP bound (largest first) with creation order breaking ties,
// children warm-start from the parent basis, and branching picks the most
// fractional binary with the lowest column id on ties. The search is serial,
// so identical inputs replay the identical tree.

namespace gridmender::milp {
namespace {

constexpr double kIntTol = 1e-9;

struct Node {
  double bound = 0.0;
  long seq = 0;
  std::shared_ptr<const std::vector<double>> lower, upper;
  std::shared_ptr<const Basis> warm;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;  // max-heap on bound
    return a.seq > b.seq;                              // then FIFO
  }
};

int pick_branch_column(const Model& m, const std::vector<double>& x) {
  int best = -1;
  double best_frac = kIntTol;
  for (const auto& v : m.variables()) {
    if (v.kind != VarKind::Binary) continue;
    const double val = x[static_cast<size_t>(v.col)];
    const double frac = std::min(val - std::floor(val), std::ceil(val) - val);
    if (frac > best_frac + 1e-15) {
      best_frac = frac;
      best = v.col;
    }
  }
  return best;
}

}  // namespace

Solution solve_builtin(const Model& m, const SolveLimits& limits) {
  if (m.num_variables() > limits.column_guard) {
    throw SolveError("model has " + std::to_string(m.num_variables()) +
                     " columns, above the builtin guard of " +
                     std::to_string(limits.column_guard));
  }
  const auto t0 = std::chrono::steady_clock::now();
  auto out_of_time = [&] {
    if (limits.time_cap_s <= 0.0) return false;
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    return dt.count() > limits.time_cap_s;
  };

  auto root_lo = std::make_shared<std::vector<double>>();
  auto root_up = std::make_shared<std::vector<double>>();
  root_lo->reserve(m.num_variables());
  root_up->reserve(m.num_variables());
  for (const auto& v : m.variables()) {
    root_lo->push_back(v.lower);
    root_up->push_back(v.upper);
  }

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  long seq = 0;
  open.push(Node{kInf, seq++, root_lo, root_up, nullptr});

  bool have_incumbent = false;
  double incumbent_obj = -kInf;
  std::vector<double> incumbent;
  bool hit_limit = false;
  long nodes = 0;
  bool root_unbounded = false;

  while (!open.empty()) {
    if (nodes >= limits.node_cap || out_of_time()) {
      hit_limit = true;
      break;
    }
    Node node = open.top();
    open.pop();

    const double gap_eps =
        have_incumbent ? limits.gap_tol * std::max(1.0, std::fabs(incumbent_obj)) : 0.0;
    if (have_incumbent && node.bound <= incumbent_obj + gap_eps) continue;

    ++nodes;
    LpResult lp = solve_lp(m, *node.lower, *node.upper, node.warm.get());
    if (lp.status == SolveStatus::Infeasible) continue;
    if (lp.status == SolveStatus::Unbounded) {
      root_unbounded = true;
      break;
    }
    if (have_incumbent && lp.objective <= incumbent_obj + gap_eps) continue;

    const int branch_col = pick_branch_column(m, lp.values);
    if (branch_col < 0) {
      // integral point; snap binaries to exact 0/1
      for (const auto& v : m.variables()) {
        if (v.kind == VarKind::Binary) {
          lp.values[static_cast<size_t>(v.col)] =
              std::round(lp.values[static_cast<size_t>(v.col)]);
        }
      }
      if (!have_incumbent || lp.objective > incumbent_obj) {
        have_incumbent = true;
        incumbent_obj = lp.objective;
        incumbent = lp.values;
      }
      continue;
    }

    auto warm = std::make_shared<Basis>(std::move(lp.basis));
    for (int side = 0; side < 2; ++side) {
      auto lo = std::make_shared<std::vector<double>>(*node.lower);
      auto up = std::make_shared<std::vector<double>>(*node.upper);
      if (side == 0) {
        (*up)[static_cast<size_t>(branch_col)] = 0.0;
      } else {
        (*lo)[static_cast<size_t>(branch_col)] = 1.0;
      }
      open.push(Node{lp.objective, seq++, std::move(lo), std::move(up), warm});
    }
  }

  Solution sol;
  if (root_unbounded) {
    sol.status = SolveStatus::Unbounded;
    sol.objective = kInf;
    return sol;
  }
  if (have_incumbent) {
    sol.values = std::move(incumbent);
    sol.objective = incumbent_obj;
    sol.status = hit_limit ? SolveStatus::Limit : SolveStatus::Optimal;
  } else {
    sol.status = hit_limit ? SolveStatus::Limit : SolveStatus::Infeasible;
  }
  return sol;
}

}  // namespace gridmender::milp
