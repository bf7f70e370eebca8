#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gridmender/linearize.hpp"

using namespace gridmender::linearize;

TEST_CASE("two-point fit yields the connecting line") {
  std::vector<std::pair<double, double>> pts{{0.0, 0.0}, {100.0, 30.0}};
  auto curve = fit_piecewise(pts);
  REQUIRE(curve.segments().size() == 1);
  CHECK(curve.segments()[0].slope == doctest::Approx(0.3));
  CHECK(curve.segments()[0].intercept == doctest::Approx(0.0));
  CHECK(curve.segments()[0].p_lo == doctest::Approx(0.0));
  CHECK(curve.segments()[0].p_hi == doctest::Approx(100.0));
}

TEST_CASE("three-point fit interpolates between samples") {
  std::vector<std::pair<double, double>> pts{{0.0, 5.0}, {50.0, 18.0}, {100.0, 30.0}};
  auto curve = fit_piecewise(pts);
  REQUIRE(curve.segments().size() == 2);
  CHECK(curve.evaluate(25.0) == doctest::Approx(11.5));
  CHECK(curve.evaluate(0.0) == doctest::Approx(5.0));
  CHECK(curve.evaluate(100.0) == doctest::Approx(30.0));
}

TEST_CASE("duplicate or decreasing loads are rejected") {
  std::vector<std::pair<double, double>> dup{{0.0, 7.0}, {0.0, 8.0}};
  CHECK_THROWS_AS(static_cast<void>(fit_piecewise(dup)), LinearizeError);
  std::vector<std::pair<double, double>> dec{{10.0, 7.0}, {5.0, 8.0}};
  CHECK_THROWS_AS(static_cast<void>(fit_piecewise(dec)), LinearizeError);
  std::vector<std::pair<double, double>> one{{10.0, 7.0}};
  CHECK_THROWS_AS(static_cast<void>(fit_piecewise(one)), LinearizeError);
  std::vector<std::pair<double, double>> neg{{0.0, -1.0}, {5.0, 8.0}};
  CHECK_THROWS_AS(static_cast<void>(fit_piecewise(neg)), LinearizeError);
}

TEST_CASE("piecewise evaluation matches a direct interpolation oracle") {
  // a jagged but increasing sample set
  std::vector<std::pair<double, double>> pts{
      {0.0, 2.0}, {12.5, 6.0}, {30.0, 11.0}, {55.0, 25.0}, {80.0, 31.0}, {120.0, 50.0}};
  auto curve = fit_piecewise(pts);

  auto interp = [&](double x) {
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
      if (x <= pts[i + 1].first) {
        const double u = (x - pts[i].first) / (pts[i + 1].first - pts[i].first);
        return pts[i].second + u * (pts[i + 1].second - pts[i].second);
      }
    }
    return pts.back().second;
  };

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> load(0.0, 120.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = load(rng);
    const double want = interp(x);
    CHECK(curve.evaluate(x) == doctest::Approx(want).epsilon(1e-9));
  }
}

TEST_CASE("four cuts form the axis-aligned square") {
  auto cuts = polygon_cuts(1.0, 4);
  REQUIRE(cuts.size() == 4);
  auto admits = [&](double p, double q) {
    for (const auto& c : cuts) {
      if (c.alpha * p + c.beta * q > c.rhs + 1e-12) return false;
    }
    return true;
  };
  CHECK(admits(1.0, 0.0));
  CHECK(admits(0.0, 1.0));
  CHECK(admits(1.0, 1.0));        // the square's corner
  CHECK(!admits(1.0 + 1e-9, 0.0));
  CHECK(!admits(0.0, -1.0 - 1e-9));
}

TEST_CASE("eight cuts separate the quoted points") {
  auto cuts = polygon_cuts(1.0, 8);
  auto admits = [&](double p, double q) {
    for (const auto& c : cuts) {
      if (c.alpha * p + c.beta * q > c.rhs + 1e-12) return false;
    }
    return true;
  };
  CHECK(!admits(1.08, 0.0));
  CHECK(admits(0.9, 0.3));
  CHECK(admits(0.0, 0.0));  // the origin satisfies every cut strictly
}

TEST_CASE("polygon cuts outer-approximate the disk within the stated factor") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (int sides : {4, 8, 12, 32}) {
    auto cuts = polygon_cuts(2.5, sides);
    const double allow = 2.5 / std::cos(std::numbers::pi / sides);
    for (int i = 0; i < 2000; ++i) {
      const double th = angle(rng);
      // boundary points of the true disk satisfy every cut
      const double p = 2.5 * std::cos(th);
      const double q = 2.5 * std::sin(th);
      for (const auto& c : cuts) {
        CHECK(c.alpha * p + c.beta * q <= c.rhs + 1e-12);
      }
      // points admitted on the allowance circle boundary never exceed it
      const double pp = allow * std::cos(th);
      const double qq = allow * std::sin(th);
      bool admitted = true;
      for (const auto& c : cuts) {
        admitted = admitted && (c.alpha * pp + c.beta * qq <= c.rhs + 1e-12);
      }
      if (admitted) {
        CHECK(std::hypot(pp, qq) <= allow + 1e-9);
      }
    }
  }
  CHECK_THROWS_AS(static_cast<void>(polygon_cuts(0.0, 8)), LinearizeError);
  CHECK_THROWS_AS(static_cast<void>(polygon_cuts(1.0, 7)), LinearizeError);
  CHECK_THROWS_AS(static_cast<void>(polygon_cuts(1.0, 2)), LinearizeError);
}

TEST_CASE("weymouth envelope carries ordered tangents and windows") {
  auto env = weymouth_envelope(0.001, 200.0, 5);
  REQUIRE(env.tangents.size() == 5);
  CHECK(env.tangents.front() == doctest::Approx(0.0));
  CHECK(env.tangents.back() == doctest::Approx(200.0));
  for (size_t i = 1; i < env.tangents.size(); ++i) {
    CHECK(env.tangents[i] > env.tangents[i - 1]);
  }
  REQUIRE(env.window_edges.size() == 6);
  CHECK(env.window_edges.front() == doctest::Approx(0.0));
  CHECK(env.window_edges.back() == doctest::Approx(200.0));
  // midpoints between adjacent tangents
  CHECK(env.window_edges[1] == doctest::Approx(25.0));
  CHECK(env.window_edges[2] == doctest::Approx(75.0));
  // tangent lines touch the parabola at their anchor
  for (int l = 0; l < env.tangent_count(); ++l) {
    const double f = env.tangents[l];
    CHECK(env.tangent_slope(l) * f + env.tangent_offset(l) ==
          doctest::Approx(0.001 * f * f).epsilon(1e-12));
  }
  CHECK_THROWS_AS(static_cast<void>(weymouth_envelope(0.0, 1.0, 3)), LinearizeError);
  CHECK_THROWS_AS(static_cast<void>(weymouth_envelope(1.0, 0.0, 3)), LinearizeError);
  CHECK_THROWS_AS(static_cast<void>(weymouth_envelope(1.0, 1.0, 1)), LinearizeError);
}
