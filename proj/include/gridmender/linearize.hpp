#pragma once

#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gridmender::linearize {

class LinearizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Segment {
  double slope = 0.0;      // fuel per unit load
  double intercept = 0.0;  // fuel at zero load, extrapolated
  double p_lo = 0.0;
  double p_hi = 0.0;
};

/// Continuous piecewise-linear curve over contiguous load segments.
class PiecewiseCurve {
 public:
  PiecewiseCurve() = default;
  static PiecewiseCurve from_segments(std::vector<Segment> segments);

  double evaluate(double load) const;
  double domain_min() const { return segments_.front().p_lo; }
  double domain_max() const { return segments_.back().p_hi; }
  double max_value() const;  // largest value over the domain
  const std::vector<Segment>& segments() const { return segments_; }
  bool empty() const { return segments_.empty(); }

 private:
  std::vector<Segment> segments_;
};

/// Interpolates (load, fuel-rate) sample points into one segment per adjacent
/// pair. Loads must be strictly increasing and rates nonnegative.
PiecewiseCurve fit_piecewise(std::span<const std::pair<double, double>> points);

struct HalfPlaneCut {
  double alpha = 0.0;  // coefficient on P
  double beta = 0.0;   // coefficient on Q
  double rhs = 0.0;    // alpha*P + beta*Q <= rhs
};

/// Outer polygonal approximation of the disk P^2 + Q^2 <= capacity^2 with
/// `sides` unit-normal cuts at angles 2*pi*k/sides. Every point of the true
/// disk satisfies all cuts; admitted points stay inside radius
/// capacity / cos(pi/sides).
std::vector<HalfPlaneCut> polygon_cuts(double capacity, int sides);

/// Relative over-admission bound of the polygon: 1/cos(pi/sides) - 1.
double polygon_overshoot(int sides);

/// Linear relaxation of the pipeline relation d = sgn(F)*K*F^2 over
/// |F| <= flow_max. One direction binary selects the flow sign, tangent
/// underestimators press |d| onto the parabola from below, and per-window
/// rows define the gap slack that the objective penalizes. Window l covers
/// |F| in [window_edges[l], window_edges[l+1]], inside which tangent l is
/// the largest underestimator.
struct WeymouthEnvelope {
  double weymouth_k = 0.0;
  double flow_max = 0.0;
  std::vector<double> tangents;      // m strictly increasing points in [0, flow_max]
  std::vector<double> window_edges;  // m+1 edges: 0, midpoints, flow_max

  int tangent_count() const { return static_cast<int>(tangents.size()); }
  // tangent line to K*F^2 at tangents[l]: value(F) = slope*F + offset
  double tangent_slope(int l) const { return 2.0 * weymouth_k * tangents[l]; }
  double tangent_offset(int l) const { return -weymouth_k * tangents[l] * tangents[l]; }
};

WeymouthEnvelope weymouth_envelope(double weymouth_k, double flow_max, int tangent_count);

}  // namespace gridmender::linearize
