#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "vtsi/bridge.hpp"
#include "vtsi/coupling.hpp"

using namespace vtsi;

namespace {

BridgeSpec single_span(double L, int n, EndCondition ends) {
  BridgeSpec s;
  s.spans = {{L, n}};
  s.E = 29e9;
  s.I = 8.65;
  s.mu = 36000.0;
  s.ends = ends;
  return s;
}

}  // namespace

TEST_CASE("element influence is a partition of unity in deflection") {
  const double l = 2.5;
  for (int k = 0; k <= 20; ++k) {
    const double a = l * k / 20.0;
    const auto r = element_influence(a, l);
    CHECK(std::abs(r[0] + r[2] - 1.0) <= 1e-15);
  }
  const auto left = element_influence(0.0, l);
  CHECK(left[0] == 1.0);
  CHECK(left[1] == 0.0);
  CHECK(left[2] == 0.0);
  CHECK(left[3] == 0.0);
}

TEST_CASE("influence derivatives match central differences") {
  const double l = 3.0, a = 1.1, h = 1e-5;
  for (int order : {1, 2}) {
    const auto d = element_influence_derivative(a, l, order);
    for (int j = 0; j < 4; ++j) {
      double fd;
      if (order == 1) {
        fd = (element_influence(a + h, l)[j] - element_influence(a - h, l)[j]) / (2 * h);
      } else {
        fd = (element_influence(a + h, l)[j] - 2 * element_influence(a, l)[j] +
              element_influence(a - h, l)[j]) / (h * h);
      }
      CHECK(d[j] == doctest::Approx(fd).epsilon(1e-4));
    }
  }
}

TEST_CASE("element matrices") {
  const auto k = beam_stiffness(2.0, 1.5);
  const auto m = beam_consistent_mass(10.0, 1.5);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      CHECK(k[i][j] == doctest::Approx(k[j][i]));
      CHECK(m[i][j] == doctest::Approx(m[j][i]));
    }
  }
  // Rigid translation and rotation carry no strain energy.
  const double trans[4] = {1, 0, 1, 0};
  const double rot[4] = {0, 1, 1.5, 1};
  double mass = 0.0;
  for (int i = 0; i < 4; ++i) {
    double ft = 0.0, fr = 0.0;
    for (int j = 0; j < 4; ++j) {
      ft += k[i][j] * trans[j];
      fr += k[i][j] * rot[j];
      mass += trans[i] * m[i][j] * trans[j];
    }
    CHECK(std::abs(ft) < 1e-12);
    CHECK(std::abs(fr) < 1e-12);
  }
  CHECK(mass == doctest::Approx(15.0));
}

TEST_CASE("simply supported frequencies against the continuous beam") {
  const auto spec = single_span(30.0, 40, EndCondition::simply_supported);
  const auto model = assemble_bridge(spec);
  const auto f = natural_frequencies(model, 3);
  const double c = std::sqrt(spec.E * spec.I / spec.mu) / (2 * std::numbers::pi);
  for (int n = 1; n <= 3; ++n) {
    const double exact = c * std::pow(n * std::numbers::pi / 30.0, 2);
    CHECK(f[n - 1] == doctest::Approx(exact).epsilon(1e-4));
  }
}

TEST_CASE("clamped frequency against the continuous beam") {
  const auto spec = single_span(25.0, 40, EndCondition::fixed);
  const auto f = natural_frequencies(assemble_bridge(spec), 1);
  const double beta = 4.730040744862704 / 25.0;
  const double exact = beta * beta * std::sqrt(spec.E * spec.I / spec.mu) / (2 * std::numbers::pi);
  CHECK(f[0] == doctest::Approx(exact).epsilon(1e-4));
}

TEST_CASE("static midspan deflection under a unit load") {
  for (int n : {2, 6}) {
    const auto spec = single_span(20.0, n, EndCondition::simply_supported);
    const auto model = assemble_bridge(spec);
    const SparseRows Lb = assemble_Lb(model, {10.0});
    const Vec row = Mat(Lb).row(0).transpose();
    const Vec u = model.system.K.ldlt().solve(row);
    const double expected = std::pow(20.0, 3) / (48.0 * spec.E * spec.I);
    CHECK(row.dot(u) == doctest::Approx(expected).epsilon(1e-10));
  }
  // Clamped-clamped, load at midspan: PL^3 / 192 EI.
  const auto spec = single_span(20.0, 4, EndCondition::fixed);
  const auto model = assemble_bridge(spec);
  const Vec row = Mat(assemble_Lb(model, {10.0})).row(0).transpose();
  const Vec u = model.system.K.ldlt().solve(row);
  CHECK(row.dot(u) == doctest::Approx(std::pow(20.0, 3) / (192.0 * spec.E * spec.I)).epsilon(1e-10));
}

TEST_CASE("rayleigh damping hits the target modes") {
  const double xi = 0.05;
  const auto model = rayleigh_damping(assemble_bridge(single_span(30.0, 20, EndCondition::fixed)), xi);
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> eig(model.system.K, model.system.M);
  const Mat phi = eig.eigenvectors();
  const Vec w2 = eig.eigenvalues();
  const auto rc = rayleigh_coefficients(std::sqrt(w2(0)), std::sqrt(w2(1)), xi);
  for (int i = 0; i < 4; ++i) {
    const double w = std::sqrt(w2(i));
    const double modal = phi.col(i).dot(model.system.C * phi.col(i)) /
                         (2 * w * phi.col(i).dot(model.system.M * phi.col(i)));
    if (i < 2) CHECK(std::abs(modal - xi) <= 1e-10);
    CHECK(modal == doctest::Approx(0.5 * (rc.alpha / w + rc.beta * w)).epsilon(1e-9));
  }
}

TEST_CASE("boundary conditions and geometry") {
  BridgeSpec spec = single_span(30.0, 10, EndCondition::fixed);
  spec.spans.push_back({30.0, 10});
  spec.approach_elements = 2;
  const auto model = assemble_bridge(spec);
  CHECK(model.x_start == 0.0);
  CHECK(model.x_end == 60.0);
  CHECK(model.node_x.front() == doctest::Approx(-6.0));
  CHECK(model.node_x.back() == doctest::Approx(66.0));
  // Approach nodes and both end nodes are fully restrained; the pier keeps
  // its rotation.
  CHECK(model.n_free() == 2 * 19 - 1);
  CHECK_NOTHROW(model.system.validate());

  const auto ss = assemble_bridge(single_span(30.0, 10, EndCondition::simply_supported));
  CHECK(ss.n_free() == 2 * 11 - 2);

  const auto rigid = rigid_bridge(0.0, 50.0);
  CHECK(rigid.n_free() == 0);
  CHECK(rigid.x_end == 50.0);
}

TEST_CASE("invalid specifications are rejected") {
  BridgeSpec spec = single_span(30.0, 0, EndCondition::fixed);
  CHECK_THROWS_AS(assemble_bridge(spec), std::invalid_argument);
  spec = single_span(-1.0, 4, EndCondition::fixed);
  CHECK_THROWS_AS(assemble_bridge(spec), std::invalid_argument);
}
