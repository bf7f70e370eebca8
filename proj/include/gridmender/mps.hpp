#pragma once

#include <filesystem>

#include "gridmender/milp.hpp"

namespace gridmender::milp {

/// Writes free-format MPS. The objective row OBJ carries the negated
/// maximize coefficients so that external minimizers reproduce the optimum
/// with flipped sign; a header comment documents the convention. Ordering is
/// bit-stable: columns by column id, rows by row id.
void export_mps(const Model& m, const std::filesystem::path& path);

/// Parses files produced by export_mps back into a Model (used for
/// round-trip verification and by tooling).
Model read_mps(const std::filesystem::path& path);

/// Line-oriented solution files: `status <word>`, `objective <value>`,
/// `<column-name> <value>`, `#` comments. Unmentioned binaries default to 0,
/// unmentioned continuous columns to their lower bound.
Solution parse_solution(const Model& m, const std::filesystem::path& path);

/// Writes a solution in the same line-oriented format.
void write_solution(const Model& m, const Solution& sol, const std::filesystem::path& path);

/// Structural model equality: same dimensions, names, kinds, bounds within
/// tol, coefficients within tol, senses and rhs within tol.
bool structurally_equal(const Model& a, const Model& b, double tol = 1e-12);

}  // namespace gridmender::milp
