#include <doctest.h>

#include "vtsi/bridge.hpp"
#include "vtsi/bspline.hpp"
#include "vtsi/coupling.hpp"

using namespace vtsi;

namespace {

BridgeModel two_span(int n, EndCondition ends, int approach = 0) {
  BridgeSpec s;
  s.spans = {{30.0, n}, {30.0, n}};
  s.E = 29e9;
  s.I = 8.65;
  s.mu = 36000.0;
  s.ends = ends;
  s.approach_elements = approach;
  return assemble_bridge(s);
}

}  // namespace

TEST_CASE("wheel positions move rigidly") {
  const auto x = wheel_positions({-15.0, 0.0}, 20.0, 0.5);
  CHECK(x[0] == doctest::Approx(-5.0));
  CHECK(x[1] == doctest::Approx(10.0));
}

TEST_CASE("locate") {
  const auto m = two_span(4, EndCondition::fixed, 2);
  const auto start = locate(m, 0.0);
  REQUIRE(start);
  CHECK(m.node_x[m.elements[start->element].left] == 0.0);
  CHECK(start->a == 0.0);
  const auto joint = locate(m, 15.0);
  REQUIRE(joint);
  CHECK(joint->a == doctest::Approx(7.5));
  CHECK(m.node_x[m.elements[joint->element].right] == doctest::Approx(15.0));
  CHECK_FALSE(locate(m, -0.1));
  CHECK_FALSE(locate(m, 60.1));
  CHECK(locate(m, 60.0));
}

TEST_CASE("off-span wheels get empty rows") {
  const auto m = two_span(4, EndCondition::simply_supported);
  const SparseRows Lb = assemble_Lb(m, {-3.0, 12.0, 70.0});
  CHECK(Lb.rows() == 3);
  CHECK(Lb.row(0).nonZeros() == 0);
  CHECK(Lb.row(1).nonZeros() > 0);
  CHECK(Lb.row(2).nonZeros() == 0);
}

TEST_CASE("rows stay on one element") {
  const auto m = two_span(6, EndCondition::fixed);
  for (double x : {0.0, 3.3, 5.0, 29.9, 30.0, 44.4, 60.0}) {
    const auto loc = locate(m, x);
    REQUIRE(loc);
    const auto& e = m.elements[loc->element];
    const SparseRows Lb = assemble_Lb(m, {x});
    for (SparseRows::InnerIterator it(Lb, 0); it; ++it) {
      bool found = false;
      for (int node : {e.left, e.right}) {
        for (int c = 0; c < 2; ++c) found = found || m.free_index[2 * node + c] == it.col();
      }
      CHECK(found);
    }
  }
}

TEST_CASE("Lb u interpolates a cubic field exactly") {
  const auto m = two_span(5, EndCondition::fixed);
  Vec u = Vec::Zero(m.n_free());
  auto w = [](double x) { return std::pow(x - 10.0, 3) * 1e-4; };
  auto dw = [](double x) { return 3 * std::pow(x - 10.0, 2) * 1e-4; };
  for (int node = 0; node < m.n_nodes(); ++node) {
    if (m.free_index[2 * node] >= 0) u(m.free_index[2 * node]) = w(m.node_x[node]);
    if (m.free_index[2 * node + 1] >= 0) u(m.free_index[2 * node + 1]) = dw(m.node_x[node]);
  }
  // End elements lose the restrained values; interior ones are exact.
  for (double x : {7.0, 13.1, 37.0, 41.5}) {
    const SparseRows Lb = assemble_Lb(m, {x});
    CHECK((Lb * u)(0) == doctest::Approx(w(x)).epsilon(1e-12));
    const SparseRows d1 = assemble_Lb(m, {x}, 1);
    CHECK((d1 * u)(0) == doctest::Approx(dw(x)).epsilon(1e-12));
    const SparseRows d2 = assemble_Lb(m, {x}, 2);
    CHECK((d2 * u)(0) == doctest::Approx(6 * (x - 10.0) * 1e-4).epsilon(1e-10));
  }
}

TEST_CASE("second derivative jumps across a joint") {
  const auto m = two_span(3, EndCondition::simply_supported);
  const Vec u = Vec::LinSpaced(m.n_free(), -1.0, 2.0).array().square();
  const double x = 10.0, h = 1e-9;
  const SparseRows left = assemble_Lb(m, {x - h}, 2);
  const SparseRows right = assemble_Lb(m, {x + h}, 2);
  const SparseRows l0 = assemble_Lb(m, {x - h}, 0);
  const SparseRows r0 = assemble_Lb(m, {x + h}, 0);
  CHECK(std::abs((l0 * u)(0) - (r0 * u)(0)) < 1e-8);
  CHECK(std::abs((left * u)(0) - (right * u)(0)) > 1e-3);
}

TEST_CASE("constraint residual") {
  const auto m = two_span(4, EndCondition::fixed);
  Mat Lt = Mat::Zero(2, 4);
  Lt(0, 2) = -1.0;
  Lt(1, 3) = -1.0;
  CouplingState s;
  s.x_w = {10.0, 80.0};
  s.Lb = assemble_Lb(m, s.x_w);
  s.rho = Vec::Zero(2);
  CHECK(constraint_residual(Lt, Vec::Zero(4), Vec::Zero(m.n_free()), s).norm() == 0.0);
  Vec ut = Vec::Zero(4);
  ut(3) = 0.02;
  s.rho(1) = 0.005;
  const Vec r = constraint_residual(Lt, ut, Vec::Zero(m.n_free()), s);
  CHECK(r(1) == doctest::Approx(-0.015));
}

TEST_CASE("spline rows start continuously at the span") {
  const auto m = two_span(10, EndCondition::fixed, 3);
  Vec u = Vec::Random(m.n_free());
  const double first = (assemble_Lb_spline(m, {-1e-9}) * u)(0);
  const double second = (assemble_Lb_spline(m, {1e-9}) * u)(0);
  CHECK(std::abs(first - second) < 1e-8);
}
