#include "gridmender/linearize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace gridmender::linearize {

PiecewiseCurve PiecewiseCurve::from_segments(std::vector<Segment> segments) {
  if (segments.empty()) throw LinearizeError("piecewise curve needs at least one segment");
  for (size_t i = 0; i < segments.size(); ++i) {
    const Segment& s = segments[i];
    if (!(s.p_lo < s.p_hi)) {
      throw LinearizeError("segment " + std::to_string(i) + " has empty load interval");
    }
    if (i > 0) {
      const Segment& prev = segments[i - 1];
      if (std::fabs(prev.p_hi - s.p_lo) > 1e-9 * std::max(1.0, std::fabs(s.p_lo))) {
        throw LinearizeError("segments are not contiguous at index " + std::to_string(i));
      }
      const double left = prev.slope * s.p_lo + prev.intercept;
      const double right = s.slope * s.p_lo + s.intercept;
      if (std::fabs(left - right) > 1e-9 * std::max(1.0, std::fabs(left))) {
        throw LinearizeError("curve discontinuous at breakpoint " + std::to_string(s.p_lo));
      }
    }
  }
  PiecewiseCurve c;
  c.segments_ = std::move(segments);
  return c;
}

double PiecewiseCurve::evaluate(double load) const {
  if (segments_.empty()) throw LinearizeError("evaluate on empty curve");
  if (load < domain_min() - 1e-9 || load > domain_max() + 1e-9) {
    throw LinearizeError("load " + std::to_string(load) + " outside curve domain");
  }
  for (const Segment& s : segments_) {
    if (load <= s.p_hi || &s == &segments_.back()) {
      return s.slope * load + s.intercept;
    }
  }
  return 0.0;  // unreachable
}

double PiecewiseCurve::max_value() const {
  double best = 0.0;
  for (const Segment& s : segments_) {
    best = std::max(best, s.slope * s.p_lo + s.intercept);
    best = std::max(best, s.slope * s.p_hi + s.intercept);
  }
  return best;
}

PiecewiseCurve fit_piecewise(std::span<const std::pair<double, double>> points) {
  if (points.size() < 2) throw LinearizeError("need at least two sample points");
  for (size_t i = 0; i < points.size(); ++i) {
    if (points[i].second < 0.0) {
      throw LinearizeError("negative fuel rate at load " + std::to_string(points[i].first));
    }
    if (i > 0 && !(points[i].first > points[i - 1].first)) {
      throw LinearizeError("loads must be strictly increasing (offender: " +
                           std::to_string(points[i].first) + ")");
    }
  }
  std::vector<Segment> segs;
  segs.reserve(points.size() - 1);
  for (size_t i = 0; i + 1 < points.size(); ++i) {
    const auto [p0, f0] = points[i];
    const auto [p1, f1] = points[i + 1];
    Segment s;
    s.slope = (f1 - f0) / (p1 - p0);
    s.intercept = f0 - s.slope * p0;
    s.p_lo = p0;
    s.p_hi = p1;
    segs.push_back(s);
  }
  return PiecewiseCurve::from_segments(std::move(segs));
}

std::vector<HalfPlaneCut> polygon_cuts(double capacity, int sides) {
  if (!(capacity > 0.0)) throw LinearizeError("capacity must be positive");
  if (sides < 4 || sides % 2 != 0) {
    throw LinearizeError("polygon needs an even side count of at least 4, got " +
                         std::to_string(sides));
  }
  std::vector<HalfPlaneCut> cuts;
  cuts.reserve(sides);
  for (int k = 0; k < sides; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / sides;
    cuts.push_back(HalfPlaneCut{std::cos(theta), std::sin(theta), capacity});
  }
  return cuts;
}

double polygon_overshoot(int sides) {
  return 1.0 / std::cos(std::numbers::pi / sides) - 1.0;
}

WeymouthEnvelope weymouth_envelope(double weymouth_k, double flow_max, int tangent_count) {
  if (!(weymouth_k > 0.0)) throw LinearizeError("Weymouth constant must be positive");
  if (!(flow_max > 0.0)) throw LinearizeError("flow capacity must be positive");
  if (tangent_count < 2) throw LinearizeError("need at least two tangent points");

  WeymouthEnvelope env;
  env.weymouth_k = weymouth_k;
  env.flow_max = flow_max;
  env.tangents.resize(tangent_count);
  for (int l = 0; l < tangent_count; ++l) {
    env.tangents[l] = flow_max * static_cast<double>(l) / (tangent_count - 1);
  }
  env.window_edges.resize(tangent_count + 1);
  env.window_edges.front() = 0.0;
  env.window_edges.back() = flow_max;
  for (int l = 1; l < tangent_count; ++l) {
    env.window_edges[l] = 0.5 * (env.tangents[l - 1] + env.tangents[l]);
  }
  return env;
}

}  // namespace gridmender::linearize
