#include <algorithm>
#include <cmath>
#include <vector>

#include "gridmender/milp.hpp"

// Bounded-variable two-phase primal simplex with a dense basis inverse.
// Phase 1 minimizes the sum of bound violations of basic variables; phase 2
// minimizes the negated model objective. Entering variables use Dantzig
// pricing with a Bland fallback after 10*rows consecutive degenerate pivots.
// All tie-breaks resolve to the lowest variable index, so repeated solves of
// the same data reproduce the same pivots bit for bit.

namespace gridmender::milp {
namespace {

constexpr double kFeasTol = 1e-7;
constexpr double kCostTol = 1e-9;
constexpr double kPivotTol = 1e-10;

struct Tableau {
  int m = 0;  // rows
  int n = 0;  // structural columns
  int total = 0;
  // column-major sparse matrix over structural + slack variables
  std::vector<std::vector<std::pair<int, double>>> cols;
  std::vector<double> lower, upper;
  std::vector<double> cost;  // minimization costs (negated objective)
  std::vector<double> rhs;

  std::vector<int> basis;          // variable basic in each row
  std::vector<int> row_of;         // row position of a basic variable, -1 otherwise
  std::vector<BasisStat> stat;
  std::vector<double> binv;        // dense m*m row-major
  std::vector<double> xb;          // values of basic variables

  double nb_value(int j) const {
    switch (stat[j]) {
      case BasisStat::AtLower: return lower[j];
      case BasisStat::AtUpper: return upper[j];
      default: return 0.0;
    }
  }
};

void build(const Model& model, const std::vector<double>& lo, const std::vector<double>& up,
           Tableau& t) {
  t.m = model.num_constraints();
  t.n = model.num_variables();
  t.total = t.n + t.m;
  t.cols.assign(t.total, {});
  t.lower.resize(t.total);
  t.upper.resize(t.total);
  t.cost.assign(t.total, 0.0);
  t.rhs.resize(t.m);
  for (int j = 0; j < t.n; ++j) {
    t.lower[j] = lo[j];
    t.upper[j] = up[j];
    t.cost[j] = -model.objective()[j];
  }
  for (const auto& row : model.constraints()) {
    for (const auto& [col, coeff] : row.terms) {
      t.cols[col].emplace_back(row.row, coeff);
    }
    const int s = t.n + row.row;
    t.cols[s].emplace_back(row.row, 1.0);
    switch (row.sense) {
      case Sense::LessEq:
        t.lower[s] = 0.0;
        t.upper[s] = kInf;
        break;
      case Sense::GreaterEq:
        t.lower[s] = -kInf;
        t.upper[s] = 0.0;
        break;
      case Sense::Eq:
        t.lower[s] = 0.0;
        t.upper[s] = 0.0;
        break;
    }
    t.rhs[row.row] = row.rhs;
  }
}

BasisStat default_nonbasic_stat(const Tableau& t, int j) {
  if (std::isfinite(t.lower[j])) return BasisStat::AtLower;
  if (std::isfinite(t.upper[j])) return BasisStat::AtUpper;
  return BasisStat::FreeAtZero;
}

// Rebuilds binv from the basis column set via Gauss-Jordan elimination.
// Returns false when the basis matrix is singular.
bool refactorize(Tableau& t) {
  const int m = t.m;
  std::vector<double> dense(static_cast<size_t>(m) * m, 0.0);
  for (int p = 0; p < m; ++p) {
    for (const auto& [r, v] : t.cols[t.basis[p]]) dense[static_cast<size_t>(r) * m + p] = v;
  }
  std::vector<double>& inv = t.binv;
  inv.assign(static_cast<size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i) inv[static_cast<size_t>(i) * m + i] = 1.0;
  for (int c = 0; c < m; ++c) {
    int piv = -1;
    double best = kPivotTol;
    for (int r = c; r < m; ++r) {
      const double v = std::fabs(dense[static_cast<size_t>(r) * m + c]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (piv < 0) return false;
    if (piv != c) {
      for (int k = 0; k < m; ++k) {
        std::swap(dense[static_cast<size_t>(piv) * m + k], dense[static_cast<size_t>(c) * m + k]);
        std::swap(inv[static_cast<size_t>(piv) * m + k], inv[static_cast<size_t>(c) * m + k]);
      }
    }
    const double d = dense[static_cast<size_t>(c) * m + c];
    for (int k = 0; k < m; ++k) {
      dense[static_cast<size_t>(c) * m + k] /= d;
      inv[static_cast<size_t>(c) * m + k] /= d;
    }
    for (int r = 0; r < m; ++r) {
      if (r == c) continue;
      const double f = dense[static_cast<size_t>(r) * m + c];
      if (f == 0.0) continue;
      for (int k = 0; k < m; ++k) {
        dense[static_cast<size_t>(r) * m + k] -= f * dense[static_cast<size_t>(c) * m + k];
        inv[static_cast<size_t>(r) * m + k] -= f * inv[static_cast<size_t>(c) * m + k];
      }
    }
  }
  t.row_of.assign(t.total, -1);
  for (int p = 0; p < m; ++p) t.row_of[t.basis[p]] = p;
  return true;
}

void recompute_xb(Tableau& t) {
  const int m = t.m;
  std::vector<double> resid = t.rhs;
  for (int j = 0; j < t.total; ++j) {
    if (t.stat[j] == BasisStat::Basic) continue;
    const double v = t.nb_value(j);
    if (v == 0.0) continue;
    for (const auto& [r, c] : t.cols[j]) resid[r] -= c * v;
  }
  t.xb.assign(m, 0.0);
  for (int p = 0; p < m; ++p) {
    double acc = 0.0;
    const double* row = &t.binv[static_cast<size_t>(p) * m];
    for (int r = 0; r < m; ++r) acc += row[r] * resid[r];
    t.xb[p] = acc;
  }
}

void slack_basis(Tableau& t) {
  t.basis.resize(t.m);
  t.stat.assign(t.total, BasisStat::AtLower);
  for (int j = 0; j < t.n; ++j) t.stat[j] = default_nonbasic_stat(t, j);
  for (int r = 0; r < t.m; ++r) {
    t.basis[r] = t.n + r;
    t.stat[t.n + r] = BasisStat::Basic;
  }
  t.row_of.assign(t.total, -1);
  for (int p = 0; p < t.m; ++p) t.row_of[t.basis[p]] = p;
  const int m = t.m;
  t.binv.assign(static_cast<size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i) t.binv[static_cast<size_t>(i) * m + i] = 1.0;
}

double infeasibility(const Tableau& t) {
  double sum = 0.0;
  for (int p = 0; p < t.m; ++p) {
    const int j = t.basis[p];
    if (t.xb[p] < t.lower[j] - kFeasTol) sum += t.lower[j] - t.xb[p];
    if (t.xb[p] > t.upper[j] + kFeasTol) sum += t.xb[p] - t.upper[j];
  }
  return sum;
}

struct PivotOutcome {
  bool moved = false;
  bool degenerate = false;
  bool unbounded = false;
};

// One simplex iteration. phase1 selects the auxiliary infeasibility costs.
// Returns moved=false when no improving nonbasic column exists.
PivotOutcome iterate(Tableau& t, bool phase1, bool bland) {
  const int m = t.m;
  // basic cost vector
  std::vector<double> cb(m, 0.0);
  for (int p = 0; p < m; ++p) {
    const int j = t.basis[p];
    if (phase1) {
      if (t.xb[p] < t.lower[j] - kFeasTol) cb[p] = -1.0;
      else if (t.xb[p] > t.upper[j] + kFeasTol) cb[p] = 1.0;
    } else {
      cb[p] = t.cost[j];
    }
  }
  // y = cb' * binv
  std::vector<double> y(m, 0.0);
  for (int p = 0; p < m; ++p) {
    if (cb[p] == 0.0) continue;
    const double f = cb[p];
    const double* row = &t.binv[static_cast<size_t>(p) * m];
    for (int r = 0; r < m; ++r) y[r] += f * row[r];
  }

  int enter = -1;
  int dir = 0;  // +1 entering increases, -1 entering decreases
  double best = kCostTol;
  for (int j = 0; j < t.total; ++j) {
    if (t.stat[j] == BasisStat::Basic) continue;
    if (t.lower[j] == t.upper[j]) continue;  // fixed, never enters
    double d = phase1 ? 0.0 : t.cost[j];
    for (const auto& [r, c] : t.cols[j]) d -= y[r] * c;
    int cand_dir = 0;
    double score = 0.0;
    if (t.stat[j] == BasisStat::AtLower && d < -kCostTol) {
      cand_dir = 1;
      score = -d;
    } else if (t.stat[j] == BasisStat::AtUpper && d > kCostTol) {
      cand_dir = -1;
      score = d;
    } else if (t.stat[j] == BasisStat::FreeAtZero && std::fabs(d) > kCostTol) {
      cand_dir = d < 0.0 ? 1 : -1;
      score = std::fabs(d);
    }
    if (cand_dir == 0) continue;
    if (bland) {  // lowest eligible index
      enter = j;
      dir = cand_dir;
      break;
    }
    if (score > best) {
      best = score;
      enter = j;
      dir = cand_dir;
    }
  }
  if (enter < 0) return {};

  // w = binv * column(enter)
  std::vector<double> w(m, 0.0);
  for (const auto& [r, c] : t.cols[enter]) {
    for (int p = 0; p < m; ++p) w[p] += t.binv[static_cast<size_t>(p) * m + r] * c;
  }

  // ratio test: entering moves by step >= 0; basic p changes at rate -dir*w[p]
  double basic_step = kInf;
  int leave_pos = -1;
  int leave_to_upper = 0;
  double leave_pivot = 0.0;

  for (int p = 0; p < m; ++p) {
    if (std::fabs(w[p]) < kPivotTol) continue;
    const double rate = -dir * w[p];
    const int j = t.basis[p];
    double limit = kInf;
    int to_upper = 0;
    const bool below = t.xb[p] < t.lower[j] - kFeasTol;
    const bool above = t.xb[p] > t.upper[j] + kFeasTol;
    if (phase1 && below) {
      if (rate > 0.0) {  // rising toward its violated lower bound
        limit = (t.lower[j] - t.xb[p]) / rate;
        to_upper = 0;
      }
    } else if (phase1 && above) {
      if (rate < 0.0) {
        limit = (t.upper[j] - t.xb[p]) / rate;
        to_upper = 1;
      }
    } else if (rate > 0.0) {
      if (std::isfinite(t.upper[j])) {
        limit = (t.upper[j] - t.xb[p]) / rate;
        to_upper = 1;
      }
    } else if (rate < 0.0) {
      if (std::isfinite(t.lower[j])) {
        limit = (t.lower[j] - t.xb[p]) / rate;
        to_upper = 0;
      }
    }
    if (limit == kInf) continue;
    limit = std::max(limit, 0.0);
    bool take = false;
    if (leave_pos < 0 || limit < basic_step - 1e-12) {
      take = true;
    } else if (limit <= basic_step + 1e-12) {
      // tie: prefer the larger pivot magnitude, then the lower variable index
      if (std::fabs(w[p]) > std::fabs(leave_pivot) + 1e-12) take = true;
      else if (std::fabs(w[p]) >= std::fabs(leave_pivot) - 1e-12 && j < t.basis[leave_pos]) take = true;
    }
    if (take) {
      basic_step = limit;
      leave_pos = p;
      leave_to_upper = to_upper;
      leave_pivot = w[p];
    }
  }

  const double room = t.upper[enter] - t.lower[enter];  // bound-flip distance
  double step = basic_step;
  bool flip = false;
  if (std::isfinite(room) && room < basic_step - 1e-12) {
    step = room;
    flip = true;
  }
  if (step == kInf) return {.moved = false, .degenerate = false, .unbounded = true};

  PivotOutcome out;
  out.moved = true;
  out.degenerate = step < 1e-11;

  if (flip) {  // bound flip, no basis change
    for (int p = 0; p < m; ++p) t.xb[p] -= dir * step * w[p];
    t.stat[enter] = (t.stat[enter] == BasisStat::AtLower) ? BasisStat::AtUpper : BasisStat::AtLower;
    return out;
  }

  const int leaving = t.basis[leave_pos];
  const double enter_start = t.nb_value(enter);
  for (int p = 0; p < m; ++p) {
    if (p != leave_pos) t.xb[p] -= dir * step * w[p];
  }
  t.xb[leave_pos] = enter_start + dir * step;
  t.stat[leaving] = leave_to_upper ? BasisStat::AtUpper : BasisStat::AtLower;
  if (!std::isfinite(leave_to_upper ? t.upper[leaving] : t.lower[leaving])) {
    t.stat[leaving] = BasisStat::FreeAtZero;
  }
  t.stat[enter] = BasisStat::Basic;
  t.basis[leave_pos] = enter;
  t.row_of[leaving] = -1;
  t.row_of[enter] = leave_pos;

  // rank-one update of binv
  const double piv = w[leave_pos];
  double* prow = &t.binv[static_cast<size_t>(leave_pos) * m];
  for (int k = 0; k < m; ++k) prow[k] /= piv;
  for (int p = 0; p < m; ++p) {
    if (p == leave_pos) continue;
    const double f = w[p];
    if (f == 0.0) continue;
    double* row = &t.binv[static_cast<size_t>(p) * m];
    for (int k = 0; k < m; ++k) row[k] -= f * prow[k];
  }
  return out;
}

// Runs one phase to completion. Returns false when no improving column
// remains (phase optimum reached).
bool run_phase(Tableau& t, bool phase1, long& iterations, long iter_cap) {
  const long degen_limit = 10L * std::max(1, t.m);
  long degen_streak = 0;
  while (true) {
    if (phase1 && infeasibility(t) <= kFeasTol) return true;
    if (iterations++ > iter_cap) {
      throw SolveError("simplex iteration limit exceeded (numerical failure)");
    }
    const bool bland = degen_streak > degen_limit;
    PivotOutcome out = iterate(t, phase1, bland);
    if (out.unbounded) {
      if (phase1) throw SolveError("phase-1 ray encountered (numerical failure)");
      return false;  // caller reports unbounded via sentinel
    }
    if (!out.moved) return true;
    degen_streak = out.degenerate ? degen_streak + 1 : 0;
    if ((iterations & 0x3f) == 0) {
      if (!refactorize(t)) throw SolveError("singular basis during refactorization");
      recompute_xb(t);
    }
  }
}

}  // namespace

LpResult solve_lp(const Model& model, const std::vector<double>& lower,
                  const std::vector<double>& upper, const Basis* warm) {
  Tableau t;
  build(model, lower, upper, t);
  for (int j = 0; j < t.total; ++j) {
    if (t.lower[j] > t.upper[j] + 1e-12) {
      return LpResult{SolveStatus::Infeasible, 0.0, {}, {}};
    }
  }

  bool warmed = false;
  if (warm && warm->valid() && static_cast<int>(warm->basic_rows.size()) == t.m &&
      static_cast<int>(warm->statuses.size()) == t.total) {
    t.basis = warm->basic_rows;
    t.stat = warm->statuses;
    // nonbasic statuses must reference a finite bound under the new box
    bool ok = true;
    for (int j = 0; j < t.total && ok; ++j) {
      if (t.stat[j] == BasisStat::Basic) continue;
      if (t.stat[j] == BasisStat::AtLower && !std::isfinite(t.lower[j])) ok = false;
      if (t.stat[j] == BasisStat::AtUpper && !std::isfinite(t.upper[j])) ok = false;
    }
    t.row_of.assign(t.total, -1);
    for (int p = 0; p < t.m; ++p) t.row_of[t.basis[p]] = p;
    if (ok && refactorize(t)) {
      recompute_xb(t);
      warmed = true;
    }
  }
  if (!warmed) {
    slack_basis(t);
    recompute_xb(t);
  }

  long iterations = 0;
  const long iter_cap = 20000L + 200L * static_cast<long>(t.m);

  if (infeasibility(t) > kFeasTol) {
    run_phase(t, /*phase1=*/true, iterations, iter_cap);
    if (!refactorize(t)) throw SolveError("singular basis after phase 1");
    recompute_xb(t);
    if (infeasibility(t) > 1e-6) {
      return LpResult{SolveStatus::Infeasible, 0.0, {}, {}};
    }
  }

  const bool bounded = run_phase(t, /*phase1=*/false, iterations, iter_cap);
  if (!refactorize(t)) throw SolveError("singular basis after phase 2");
  recompute_xb(t);
  if (infeasibility(t) > 1e-6) {
    // drift beyond tolerance; one corrective phase-1 pass
    run_phase(t, /*phase1=*/true, iterations, iter_cap);
    run_phase(t, /*phase1=*/false, iterations, iter_cap);
    if (!refactorize(t)) throw SolveError("singular basis after cleanup");
    recompute_xb(t);
    if (infeasibility(t) > 1e-6) throw SolveError("simplex failed to restore feasibility");
  }
  if (!bounded) return LpResult{SolveStatus::Unbounded, kInf, {}, {}};

  LpResult res;
  res.status = SolveStatus::Optimal;
  res.values.assign(t.n, 0.0);
  for (int j = 0; j < t.n; ++j) res.values[j] = t.nb_value(j);
  for (int p = 0; p < t.m; ++p) {
    if (t.basis[p] < t.n) res.values[t.basis[p]] = t.xb[p];
  }
  double obj = 0.0;
  for (int j = 0; j < t.n; ++j) obj += model.objective()[j] * res.values[j];
  res.objective = obj;
  res.basis.basic_rows = t.basis;
  res.basis.statuses = t.stat;
  return res;
}

}  // namespace gridmender::milp
