#include <doctest.h>

#include <cstring>
#include <random>

#include "gridmender/milp.hpp"
#include "oracle.hpp"

using namespace gridmender::milp;

namespace {

Model two_binary_model() {
  Model m("two");
  const int x = m.add_variable("x", 0, 1, VarKind::Binary);
  const int y = m.add_variable("y", 0, 1, VarKind::Binary);
  m.add_objective(x, 1.0);
  m.add_objective(y, 1.0);
  m.add_constraint("cap", {{x, 1.0}, {y, 1.0}}, Sense::LessEq, 1.0);
  return m;
}

}  // namespace

TEST_CASE("model rejects malformed input") {
  Model m;
  const int x = m.add_variable("x", 0, 1, VarKind::Binary);
  CHECK_THROWS_AS(m.add_variable("x", 0, 1, VarKind::Continuous), ModelError);
  CHECK_THROWS_AS(m.add_variable("bad name", 0, 1, VarKind::Continuous), ModelError);
  CHECK_THROWS_AS(m.add_variable("inverted", 2, 1, VarKind::Continuous), ModelError);
  CHECK_THROWS_AS(m.add_variable("wide", -1, 2, VarKind::Binary), ModelError);
  CHECK_THROWS_AS(m.add_constraint("dup", {{x, 1.0}, {x, 2.0}}, Sense::LessEq, 1.0), ModelError);
  CHECK_THROWS_AS(m.add_constraint("nan", {{x, std::nan("")}}, Sense::LessEq, 1.0), ModelError);
  CHECK(m.column("x") == x);
  CHECK_THROWS_AS(m.column("zz"), ModelError);
}

TEST_CASE("two-binary knapsack solves to one") {
  Model m = two_binary_model();
  Solution sol = solve_builtin(m);
  CHECK(sol.status == SolveStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(1.0).epsilon(1e-9));
  // matches full enumeration over the four assignments
  auto best = oracle::enumerate_best(m, /*prefix_prune=*/false);
  CHECK(best.feasible);
  CHECK(sol.objective == doctest::Approx(best.objective).epsilon(1e-9));
}

TEST_CASE("contradictory bounds are infeasible") {
  Model m;
  const int x = m.add_variable("x", 0, 10, VarKind::Continuous);
  m.add_objective(x, 1.0);
  m.add_constraint("lo", {{x, 1.0}}, Sense::GreaterEq, 2.0);
  m.add_constraint("hi", {{x, 1.0}}, Sense::LessEq, 1.0);
  Solution sol = solve_builtin(m);
  CHECK(sol.status == SolveStatus::Infeasible);
}

TEST_CASE("unbounded column is reported") {
  Model m;
  const int x = m.add_variable("x", 0, kInf, VarKind::Continuous);
  m.add_objective(x, 1.0);
  Solution sol = solve_builtin(m);
  CHECK(sol.status == SolveStatus::Unbounded);
}

TEST_CASE("column guard refuses oversized models") {
  Model m;
  for (int i = 0; i < 40; ++i) {
    m.add_variable("c" + std::to_string(i), 0, 1, VarKind::Continuous);
  }
  SolveLimits limits;
  limits.column_guard = 10;
  CHECK_THROWS_AS(solve_builtin(m, limits), SolveError);
}

TEST_CASE("eight-item knapsack matches exhaustive enumeration") {
  // values and weights fixed; capacity leaves a nontrivial choice
  const double value[8] = {9, 7, 6, 5, 5, 4, 3, 1};
  const double weight[8] = {6, 5, 4, 3, 3, 2, 2, 1};
  Model m("knapsack");
  std::vector<int> cols;
  std::vector<std::pair<int, double>> cap;
  for (int i = 0; i < 8; ++i) {
    const int c = m.add_variable("item" + std::to_string(i), 0, 1, VarKind::Binary);
    m.add_objective(c, value[i]);
    cap.emplace_back(c, weight[i]);
    cols.push_back(c);
  }
  m.add_constraint("capacity", cap, Sense::LessEq, 12.0);

  // brute force over all 2^8 subsets
  double best = 0.0;
  for (int mask = 0; mask < 256; ++mask) {
    double v = 0.0, w = 0.0;
    for (int i = 0; i < 8; ++i) {
      if (mask & (1 << i)) {
        v += value[i];
        w += weight[i];
      }
    }
    if (w <= 12.0) best = std::max(best, v);
  }
  Solution sol = solve_builtin(m);
  CHECK(sol.status == SolveStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(best).epsilon(1e-9));
}

TEST_CASE("random mixed models up to 12 binaries match leaf enumeration") {
  std::mt19937 rng(20240817);
  std::uniform_real_distribution<double> coeff(-4.0, 4.0);
  std::uniform_int_distribution<int> nbin(2, 12);
  std::uniform_int_distribution<int> ncont(0, 4);
  std::uniform_int_distribution<int> nrows(2, 8);
  std::uniform_int_distribution<int> sense_pick(0, 2);

  for (int trial = 0; trial < 25; ++trial) {
    Model m("rand" + std::to_string(trial));
    const int nb = nbin(rng);
    const int nc = ncont(rng);
    std::vector<int> cols;
    for (int i = 0; i < nb; ++i) {
      const int c = m.add_variable("b" + std::to_string(i), 0, 1, VarKind::Binary);
      m.add_objective(c, coeff(rng));
      cols.push_back(c);
    }
    for (int i = 0; i < nc; ++i) {
      const int c = m.add_variable("c" + std::to_string(i), 0.0, 3.0, VarKind::Continuous);
      m.add_objective(c, coeff(rng));
      cols.push_back(c);
    }
    const int rows = nrows(rng);
    for (int r = 0; r < rows; ++r) {
      std::vector<std::pair<int, double>> terms;
      double mag = 0.0;
      for (int c : cols) {
        const double a = coeff(rng);
        if (std::fabs(a) < 1.0) continue;  // keep rows sparse
        terms.emplace_back(c, a);
        mag += std::fabs(a);
      }
      if (terms.empty()) continue;
      // right-hand sides chosen so feasibility is likely but not guaranteed
      const double rhs = coeff(rng) / 4.0 * mag / 2.0 + mag / 4.0;
      const Sense s = sense_pick(rng) == 0 ? Sense::LessEq
                      : sense_pick(rng) == 1 ? Sense::GreaterEq
                                             : Sense::LessEq;
      m.add_constraint("r" + std::to_string(r), terms, s, rhs);
    }

    auto best = oracle::enumerate_best(m, /*prefix_prune=*/false);
    Solution sol = solve_builtin(m);
    if (best.feasible) {
      REQUIRE(sol.status == SolveStatus::Optimal);
      CHECK(sol.objective == doctest::Approx(best.objective).epsilon(1e-6));
    } else {
      CHECK(sol.status == SolveStatus::Infeasible);
    }
  }
}

TEST_CASE("builtin solve is bit-for-bit deterministic") {
  Model m = two_binary_model();
  // richer model: add continuous tail and more rows
  const int z = m.add_variable("z", 0, 5, VarKind::Continuous);
  m.add_objective(z, 0.25);
  m.add_constraint("tie", {{m.column("x"), 2.0}, {z, 1.0}}, Sense::LessEq, 4.0);

  Solution a = solve_builtin(m);
  Solution b = solve_builtin(m);
  REQUIRE(a.values.size() == b.values.size());
  CHECK(std::memcmp(a.values.data(), b.values.data(), a.values.size() * sizeof(double)) == 0);
  CHECK(a.objective == b.objective);
  CHECK(a.status == b.status);
}

TEST_CASE("node cap returns the incumbent with limit status") {
  const double value[8] = {9, 7, 6, 5, 5, 4, 3, 1};
  const double weight[8] = {6, 5, 4, 3, 3, 2, 2, 1};
  Model m("knapsack");
  std::vector<std::pair<int, double>> cap;
  for (int i = 0; i < 8; ++i) {
    const int c = m.add_variable("item" + std::to_string(i), 0, 1, VarKind::Binary);
    m.add_objective(c, value[i]);
    cap.emplace_back(c, weight[i]);
  }
  m.add_constraint("capacity", cap, Sense::LessEq, 12.0);
  SolveLimits limits;
  limits.node_cap = 1;
  Solution sol = solve_builtin(m, limits);
  CHECK(sol.status == SolveStatus::Limit);
}
