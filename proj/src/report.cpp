#include <sstream>

#include "gridmender/validate.hpp"

namespace gridmender::validate {

nlohmann::json ValidationReport::to_json() const {
  nlohmann::json j;
  j["pass"] = pass;
  j["recomputed_objective"] = recomputed_objective;
  j["solver_objective"] = solver_objective;
  j["findings"] = nlohmann::json::array();
  for (const auto& f : findings) {
    j["findings"].push_back({{"family", f.family},
                             {"entity", f.entity},
                             {"ts", f.ts},
                             {"residual", f.residual},
                             {"limit", f.limit},
                             {"note", f.note}});
  }
  j["relaxation"] = {{"sum_gap_slack", relaxation.sum_gap_slack},
                     {"worst_weymouth_residual", relaxation.worst_weymouth_residual},
                     {"max_weymouth_residual", relaxation.max_weymouth_residual}};
  return j;
}

std::string ValidationReport::table() const {
  std::ostringstream out;
  out << (pass ? "PASS" : "FAIL") << "  objective " << recomputed_objective << " (solver "
      << solver_objective << ")\n";
  out << "relaxation: sum gap slack " << relaxation.sum_gap_slack << ", worst exact residual "
      << relaxation.worst_weymouth_residual << "\n";
  if (findings.empty()) {
    out << "no findings\n";
    return out.str();
  }
  out << findings.size() << " finding(s):\n";
  for (const auto& f : findings) {
    out << "  [" << f.family << "] " << f.entity;
    if (f.ts > 0) out << " @t" << f.ts;
    out << "  residual " << f.residual << " limit " << f.limit << "  " << f.note << "\n";
  }
  return out.str();
}

}  // namespace gridmender::validate
