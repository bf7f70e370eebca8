#include "gridmender/mps.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace gridmender::milp {
namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

char sense_tag(Sense s) {
  switch (s) {
    case Sense::LessEq: return 'L';
    case Sense::Eq: return 'E';
    case Sense::GreaterEq: return 'G';
  }
  return 'L';
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

double parse_num(const std::string& tok, const std::string& where) {
  size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    throw ModelError("unparseable number '" + tok + "' in " + where);
  }
  if (pos != tok.size()) throw ModelError("unparseable number '" + tok + "' in " + where);
  return v;
}

}  // namespace

void export_mps(const Model& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ModelError("cannot open '" + path.string() + "' for writing");

  out << "* objective row OBJ holds the negated maximize objective;\n"
      << "* minimizing OBJ and flipping the sign reproduces the model optimum.\n";
  out << "NAME " << m.name() << "\n";
  out << "ROWS\n";
  out << " N OBJ\n";
  for (const auto& row : m.constraints()) {
    out << " " << sense_tag(row.sense) << " " << row.name << "\n";
  }
  // transpose: per-column entries in row-id order
  std::vector<std::vector<std::pair<int, double>>> by_col(m.num_variables());
  for (const auto& row : m.constraints()) {
    for (const auto& [col, coeff] : row.terms) by_col[col].emplace_back(row.row, coeff);
  }
  out << "COLUMNS\n";
  bool in_int = false;
  int marker_id = 0;
  for (const auto& var : m.variables()) {
    const bool wants_int = var.kind == VarKind::Binary;
    if (wants_int != in_int) {
      out << "    MARKER" << marker_id++ << " 'MARKER' "
          << (wants_int ? "'INTORG'" : "'INTEND'") << "\n";
      in_int = wants_int;
    }
    // every column emits its objective entry so readers see all columns
    out << "    " << var.name << " OBJ " << num(-m.objective()[var.col]) << "\n";
    for (const auto& [row_id, coeff] : by_col[var.col]) {
      out << "    " << var.name << " " << m.constraints()[row_id].name << " " << num(coeff)
          << "\n";
    }
  }
  if (in_int) out << "    MARKER" << marker_id++ << " 'MARKER' 'INTEND'\n";
  out << "RHS\n";
  for (const auto& row : m.constraints()) {
    if (row.rhs != 0.0) out << "    RHS " << row.name << " " << num(row.rhs) << "\n";
  }
  out << "BOUNDS\n";
  for (const auto& var : m.variables()) {
    if (var.lower == var.upper) {
      out << " FX BND " << var.name << " " << num(var.lower) << "\n";
      continue;
    }
    if (std::isfinite(var.lower)) {
      out << " LO BND " << var.name << " " << num(var.lower) << "\n";
    } else {
      out << " MI BND " << var.name << "\n";
    }
    if (std::isfinite(var.upper)) {
      out << " UP BND " << var.name << " " << num(var.upper) << "\n";
    }
  }
  out << "ENDATA\n";
  if (!out.good()) throw ModelError("write failure on '" + path.string() + "'");
}

Model read_mps(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open '" + path.string() + "'");

  enum class Section { None, Rows, Columns, Rhs, Bounds, Done };
  Section section = Section::None;
  std::string model_name = "model";

  struct RowSpec {
    std::string name;
    Sense sense;
    std::vector<std::pair<int, double>> terms;
    double rhs = 0.0;
  };
  std::vector<RowSpec> rows;
  std::unordered_map<std::string, int> row_index;
  bool saw_obj_row = false;

  struct ColSpec {
    std::string name;
    bool integer = false;
    double obj = 0.0;
    double lower = 0.0;
    double upper = kInf;
    bool lower_set = false, upper_set = false, fixed = false;
  };
  std::vector<ColSpec> cols;
  std::unordered_map<std::string, int> col_index;
  bool in_int = false;

  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '*') continue;
    const bool indented = line[0] == ' ' || line[0] == '\t';
    auto tk = tokens(line);
    if (tk.empty()) continue;

    if (!indented || (section == Section::None && tk[0] == "NAME")) {
      const std::string& head = tk[0];
      if (head == "NAME") {
        if (tk.size() > 1) model_name = tk[1];
        continue;
      }
      if (head == "ROWS") { section = Section::Rows; continue; }
      if (head == "COLUMNS") { section = Section::Columns; continue; }
      if (head == "RHS") { section = Section::Rhs; continue; }
      if (head == "RANGES") { throw ModelError("RANGES section is not supported"); }
      if (head == "BOUNDS") { section = Section::Bounds; continue; }
      if (head == "ENDATA") { section = Section::Done; break; }
      throw ModelError("unknown MPS section '" + head + "'");
    }

    switch (section) {
      case Section::Rows: {
        if (tk.size() != 2) throw ModelError("malformed ROWS line: " + line);
        if (tk[0] == "N") {
          if (saw_obj_row) throw ModelError("multiple objective rows");
          saw_obj_row = true;
          continue;
        }
        Sense s;
        if (tk[0] == "L") s = Sense::LessEq;
        else if (tk[0] == "G") s = Sense::GreaterEq;
        else if (tk[0] == "E") s = Sense::Eq;
        else throw ModelError("unknown row sense '" + tk[0] + "'");
        if (row_index.contains(tk[1])) throw ModelError("duplicate row '" + tk[1] + "'");
        row_index.emplace(tk[1], static_cast<int>(rows.size()));
        rows.push_back(RowSpec{tk[1], s, {}, 0.0});
        break;
      }
      case Section::Columns: {
        if (tk.size() >= 3 && tk[1] == "'MARKER'") {
          if (tk[2] == "'INTORG'") in_int = true;
          else if (tk[2] == "'INTEND'") in_int = false;
          else throw ModelError("unknown marker: " + line);
          continue;
        }
        if (tk.size() < 3 || tk.size() % 2 == 0) {
          throw ModelError("malformed COLUMNS line: " + line);
        }
        int ci;
        auto it = col_index.find(tk[0]);
        if (it == col_index.end()) {
          ci = static_cast<int>(cols.size());
          col_index.emplace(tk[0], ci);
          cols.push_back(ColSpec{tk[0], in_int, 0.0, 0.0, kInf, false, false, false});
        } else {
          ci = it->second;
        }
        for (size_t k = 1; k + 1 < tk.size(); k += 2) {
          const double v = parse_num(tk[k + 1], "COLUMNS");
          if (tk[k] == "OBJ") {
            cols[ci].obj += -v;  // undo the negate-and-minimize convention
          } else {
            auto rit = row_index.find(tk[k]);
            if (rit == row_index.end()) throw ModelError("unknown row '" + tk[k] + "'");
            rows[rit->second].terms.emplace_back(ci, v);
          }
        }
        break;
      }
      case Section::Rhs: {
        if (tk.size() < 3 || tk.size() % 2 == 0) throw ModelError("malformed RHS line: " + line);
        for (size_t k = 1; k + 1 < tk.size(); k += 2) {
          if (tk[k] == "OBJ") continue;  // objective offset unsupported, ignore
          auto rit = row_index.find(tk[k]);
          if (rit == row_index.end()) throw ModelError("unknown row '" + tk[k] + "'");
          rows[rit->second].rhs = parse_num(tk[k + 1], "RHS");
        }
        break;
      }
      case Section::Bounds: {
        if (tk.size() < 3) throw ModelError("malformed BOUNDS line: " + line);
        auto cit = col_index.find(tk[2]);
        if (cit == col_index.end()) throw ModelError("unknown column '" + tk[2] + "'");
        ColSpec& c = cols[cit->second];
        const std::string& kind = tk[0];
        if (kind == "LO") { c.lower = parse_num(tk.at(3), "BOUNDS"); c.lower_set = true; }
        else if (kind == "UP") { c.upper = parse_num(tk.at(3), "BOUNDS"); c.upper_set = true; }
        else if (kind == "FX") {
          c.lower = c.upper = parse_num(tk.at(3), "BOUNDS");
          c.fixed = c.lower_set = c.upper_set = true;
        } else if (kind == "MI") { c.lower = -kInf; c.lower_set = true; }
        else if (kind == "PL") { c.upper = kInf; c.upper_set = true; }
        else if (kind == "BV") { c.lower = 0.0; c.upper = 1.0; c.integer = true; }
        else throw ModelError("unsupported bound kind '" + kind + "'");
        break;
      }
      default:
        throw ModelError("data line outside any section: " + line);
    }
  }
  if (section != Section::Done) throw ModelError("missing ENDATA in '" + path.string() + "'");

  Model m(model_name);
  for (const auto& c : cols) {
    const VarKind kind = c.integer ? VarKind::Binary : VarKind::Continuous;
    double lo = c.lower, up = c.upper;
    if (c.integer && !c.lower_set) lo = 0.0;
    if (c.integer && !c.upper_set) up = 1.0;
    const int col = m.add_variable(c.name, lo, up, kind);
    if (c.obj != 0.0) m.add_objective(col, c.obj);
  }
  for (const auto& r : rows) {
    m.add_constraint(r.name, r.terms, r.sense, r.rhs);
  }
  return m;
}

Solution parse_solution(const Model& m, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open solution file '" + path.string() + "'");

  Solution sol;
  sol.status = SolveStatus::Feasible;
  sol.values.resize(m.num_variables());
  for (const auto& var : m.variables()) {
    sol.values[var.col] =
        var.kind == VarKind::Binary ? 0.0 : (std::isfinite(var.lower) ? var.lower : 0.0);
  }
  bool have_objective = false;

  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto tk = tokens(line);
    if (tk.empty()) continue;
    if (tk.size() != 2) throw ModelError("malformed solution line: " + line);
    if (tk[0] == "status") {
      auto st = status_from_string(tk[1]);
      if (!st) throw ModelError("unknown status word '" + tk[1] + "'");
      sol.status = *st;
      continue;
    }
    if (tk[0] == "objective") {
      sol.objective = parse_num(tk[1], "solution objective");
      have_objective = true;
      continue;
    }
    auto col = m.find_column(tk[0]);
    if (!col) throw ModelError("solution names unknown column '" + tk[0] + "'");
    sol.values[*col] = parse_num(tk[1], "solution value for " + tk[0]);
  }

  if (!have_objective) {
    double obj = 0.0;
    for (int j = 0; j < m.num_variables(); ++j) obj += m.objective()[j] * sol.values[j];
    sol.objective = obj;
  }
  if (sol.status == SolveStatus::Optimal) {
    for (const auto& var : m.variables()) {
      const double v = sol.values[var.col];
      if (v < var.lower - 1e-6 || v > var.upper + 1e-6) {
        throw ModelError("value " + std::to_string(v) + " of '" + var.name +
                         "' violates its bounds in an optimal solution");
      }
    }
  }
  return sol;
}

void write_solution(const Model& m, const Solution& sol, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ModelError("cannot open '" + path.string() + "' for writing");
  out << "status " << to_string(sol.status) << "\n";
  out << "objective " << num(sol.objective) << "\n";
  if (!sol.values.empty()) {
    for (const auto& var : m.variables()) {
      out << var.name << " " << num(sol.values[var.col]) << "\n";
    }
  }
  if (!out.good()) throw ModelError("write failure on '" + path.string() + "'");
}

bool structurally_equal(const Model& a, const Model& b, double tol) {
  if (a.num_variables() != b.num_variables()) return false;
  if (a.num_constraints() != b.num_constraints()) return false;
  auto close = [&](double x, double y) {
    if (std::isinf(x) || std::isinf(y)) return x == y;
    return std::fabs(x - y) <= tol;
  };
  for (int j = 0; j < a.num_variables(); ++j) {
    const auto& va = a.variable(j);
    const auto& vb = b.variable(j);
    if (va.name != vb.name || va.kind != vb.kind) return false;
    if (!close(va.lower, vb.lower) || !close(va.upper, vb.upper)) return false;
    if (!close(a.objective()[j], b.objective()[j])) return false;
  }
  for (int r = 0; r < a.num_constraints(); ++r) {
    const auto& ra = a.constraints()[r];
    const auto& rb = b.constraints()[r];
    if (ra.name != rb.name || ra.sense != rb.sense) return false;
    if (!close(ra.rhs, rb.rhs)) return false;
    if (ra.terms.size() != rb.terms.size()) return false;
    for (size_t k = 0; k < ra.terms.size(); ++k) {
      if (ra.terms[k].first != rb.terms[k].first) return false;
      if (!close(ra.terms[k].second, rb.terms[k].second)) return false;
    }
  }
  return true;
}

}  // namespace gridmender::milp
