#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "gridmender/encode.hpp"

namespace gridmender::encode::detail {

// Accumulates coefficients, merging repeated columns before the row lands in
// the model (window rows legitimately touch the same column twice).
class RowBuilder {
 public:
  void add(int col, double coeff) { coeffs_[col] += coeff; }

  int commit(milp::Model& m, const std::string& name, milp::Sense sense, double rhs) {
    std::vector<std::pair<int, double>> terms;
    terms.reserve(coeffs_.size());
    for (const auto& [col, coeff] : coeffs_) {
      if (coeff != 0.0) terms.emplace_back(col, coeff);
    }
    coeffs_.clear();
    return m.add_constraint(name, std::move(terms), sense, rhs);
  }

 private:
  std::map<int, double> coeffs_;
};

// Largest |C - (a_l P + b_l)| over feasible C and P for any segment pair;
// serves as the deactivation constant for the fuel-curve equality rows.
double fuel_curve_big_m(const linearize::PiecewiseCurve& curve, double p_max);

// Units burning gas / diesel located at the given power node.
std::vector<const scenario::GeneratorSpec*> gas_units_at_node(const scenario::Scenario& s,
                                                              const std::string& pn_id);
std::vector<const scenario::GeneratorSpec*> diesel_units_at_node(const scenario::Scenario& s,
                                                                 const std::string& pn_id);

// Site list of a mobile: accessible sites plus the initial one, sorted.
std::vector<std::string> mobile_sites(const scenario::MobileResource& mob);

}  // namespace gridmender::encode::detail
