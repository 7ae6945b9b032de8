#include <doctest.h>

#include <cmath>

#include "vtsi/bridge.hpp"
#include "vtsi/bspline.hpp"

using namespace vtsi;

TEST_CASE("open uniform knots") {
  CHECK(open_uniform_knots(4, 4) == std::vector<double>{0, 0, 0, 0, 1, 1, 1, 1});
  CHECK(open_uniform_knots(6, 4) == std::vector<double>{0, 0, 0, 0, 1, 2, 3, 3, 3, 3});
}

TEST_CASE("single-segment cubic basis equals Bernstein polynomials") {
  const auto knots = open_uniform_knots(4, 4);
  for (int s = 0; s <= 50; ++s) {
    const double t = s / 50.0, u = 1.0 - t;
    const double bern[4] = {u * u * u, 3 * t * u * u, 3 * t * t * u, t * t * t};
    for (int i = 0; i < 4; ++i) CHECK(std::abs(bspline_basis(knots, i, 4, t) - bern[i]) <= 1e-15);
  }
}

TEST_CASE("uniform interior basis matches the cardinal cubic") {
  const auto knots = open_uniform_knots(12, 4);
  // Interior knot t = 5: weights 1/6, 2/3, 1/6 on consecutive functions.
  const auto row = spline_row(knots, 12, 4, 5.0);
  double sum = 0.0;
  for (double v : row.values) sum += v;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
  std::vector<double> nz;
  for (double v : row.values) {
    if (v > 1e-15) nz.push_back(v);
  }
  REQUIRE(nz.size() == 3);
  CHECK(nz[0] == doctest::Approx(1.0 / 6));
  CHECK(nz[1] == doctest::Approx(2.0 / 3));
  CHECK(nz[2] == doctest::Approx(1.0 / 6));
}

TEST_CASE("de Boor row agrees with the recursion") {
  const int n = 9;
  const auto knots = open_uniform_knots(n, 4);
  for (double t : {0.0, 0.3, 1.0, 2.75, 4.5, 5.999, 6.0}) {
    const auto row = spline_row(knots, n, 4, t);
    for (int j = 0; j < 4; ++j) {
      CHECK(row.values[j] == doctest::Approx(bspline_basis(knots, row.first + j, 4, t)).epsilon(1e-13));
    }
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += bspline_basis(knots, i, 4, t);
    CHECK(std::abs(total - 1.0) <= 1e-12);
  }
  CHECK_THROWS(spline_row(knots, n, 4, 6.5));
}

TEST_CASE("parameter inversion and spline rows on a bridge") {
  BridgeSpec spec;
  spec.spans = {{25.0, 10}, {25.0, 10}};
  spec.E = 22e9;
  spec.I = 4.0;
  spec.mu = 38000.0;
  spec.ends = EndCondition::fixed;
  spec.approach_elements = 3;
  const auto m = assemble_bridge(spec);
  const int n = m.n_nodes();
  const auto knots = open_uniform_knots(n, 4);
  for (double x : {-7.5, -2.0, 0.0, 12.3, 25.0, 49.0, 57.5}) {
    const double t = spline_parameter(m, x);
    const auto row = spline_row(knots, n, 4, t);
    double X = 0.0;
    for (int j = 0; j < 4; ++j) X += row.values[j] * m.node_x[row.first + j];
    CHECK(X == doctest::Approx(x).epsilon(1e-12));
  }
  // A uniform unit deflection of all free nodes is reproduced where every
  // control point is free.
  Vec u = Vec::Zero(m.n_free());
  for (int node = 0; node < n; ++node) {
    if (m.free_index[2 * node] >= 0) u(m.free_index[2 * node]) = 1.0;
    if (m.free_index[2 * node + 1] >= 0) u(m.free_index[2 * node + 1]) = 123.0;
  }
  const SparseRows Lb = assemble_Lb_spline(m, {12.5, 37.5, 80.0});
  CHECK((Lb * u)(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((Lb * u)(1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(Lb.row(2).nonZeros() == 0);

  spec.ends = EndCondition::simply_supported;
  CHECK_THROWS_AS(assemble_Lb_spline(assemble_bridge(spec), {1.0}), std::invalid_argument);
}
