#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "vtsi/train.hpp"

using namespace vtsi;

namespace {

CarSpec car() {
  CarSpec c;
  c.m_c = 60000.0;
  c.I_c = 1.125e6;
  c.m_w = 1000.0;
  c.k_s = 5e6;
  c.c_s = 27000.0;
  c.l_c = 15.0;
  c.l_ct = 20.0;
  return c;
}

// Frequencies (Hz) of the carriage with both wheels held.
std::vector<double> held_frequencies(const TrainModel& m) {
  const auto& cd = m.carriage_dofs;
  const int n = static_cast<int>(cd.size());
  Mat K(n, n), M(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      K(i, j) = m.system.K(cd[i], cd[j]);
      M(i, j) = m.system.M(cd[i], cd[j]);
    }
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> eig(K, M);
  std::vector<double> f;
  for (int i = 0; i < n; ++i) f.push_back(std::sqrt(eig.eigenvalues()(i)) / (2 * std::numbers::pi));
  return f;
}

}  // namespace

TEST_CASE("single car bounce and pitch") {
  const auto spec = car();
  const auto m = build_car(spec);
  CHECK(m.n_dof() == 4);
  CHECK(m.n_wheels() == 2);
  const auto f = held_frequencies(m);
  const double bounce = std::sqrt(2 * spec.k_s / spec.m_c) / (2 * std::numbers::pi);
  const double pitch = std::sqrt(2 * spec.k_s * std::pow(spec.l_c / 2, 2) / spec.I_c) / (2 * std::numbers::pi);
  CHECK(f[0] == doctest::Approx(std::min(bounce, pitch)).epsilon(1e-12));
  CHECK(f[1] == doctest::Approx(std::max(bounce, pitch)).epsilon(1e-12));
}

TEST_CASE("dead load and wheel reactions") {
  const auto spec = car();
  const auto m = build_car(spec);
  CHECK(m.weight() == doctest::Approx((spec.m_c + 2 * spec.m_w) * kGravity));
  // Wheels held at zero: solve carriage statics, then wheel reactions.
  const auto p = partition(m);
  const Vec uc = p.Kcc.ldlt().solve(p.Pc);
  const Vec reaction = p.Kwc * uc - p.Pw;
  for (int i = 0; i < 2; ++i) {
    CHECK(reaction(i) == doctest::Approx((spec.m_c / 2 + spec.m_w) * kGravity));
  }
  CHECK(uc(0) == doctest::Approx(-spec.m_c * kGravity / (2 * spec.k_s)));
  CHECK(std::abs(uc(1)) < 1e-15);
}

TEST_CASE("constraint rows select the wheels with a negative sign") {
  const auto m = build_train({car(), car()});
  CHECK(m.n_wheels() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(m.Lt.row(i).sum() == -1.0);
    CHECK(m.Lt(i, m.wheel_dofs[i]) == -1.0);
  }
  CHECK(m.wheel_offsets == std::vector<double>{0.0, 15.0, 20.0, 35.0});
  CHECK(m.overall_length == 40.0);

  const auto g = build_train({car(), car()}, std::vector<double>{3.0});
  CHECK(g.wheel_offsets == std::vector<double>{0.0, 15.0, 18.0, 33.0});
  CHECK_THROWS_AS(build_train({car(), car()}, std::vector<double>{-1.0}), std::invalid_argument);
}

TEST_CASE("partition and reassemble round trip") {
  const auto m = build_train({car(), car(), car()});
  const auto blocks = partition(m);
  const auto back = reassemble(blocks, m);
  CHECK((back.M - m.system.M).norm() == 0.0);
  CHECK((back.C - m.system.C).norm() == 0.0);
  CHECK((back.K - m.system.K).norm() == 0.0);
  CHECK((back.P - m.system.P).norm() == 0.0);
}

TEST_CASE("shared degrees of freedom") {
  const auto full = build_train({car(), car()});
  const auto merged = build_train({car(), car()}, std::vector<double>{0.0}, {{3, 6}});
  CHECK(merged.n_dof() == full.n_dof() - 1);
  CHECK(merged.n_wheels() == 4);
  CHECK(merged.system.M.trace() == doctest::Approx(full.system.M.trace()));
  CHECK_THROWS(build_train({car(), car()}, std::nullopt, {{3, 40}}));
  CHECK_THROWS(build_train({car(), car()}, std::nullopt, {{0, 3}}));
}

TEST_CASE("car validation") {
  CarSpec c = car();
  CHECK_NOTHROW(c.validate());
  c.m_w = 0.0;
  CHECK_NOTHROW(c.validate());
  c.m_c = -1.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = car();
  c.l_ct = 10.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("matrix file round trip") {
  const auto m = build_train({car(), car()}, std::vector<double>{3.0});
  const auto path = std::filesystem::temp_directory_path() / "vtsi_train_roundtrip.txt";
  write_train_matrices(m, path);
  const auto r = read_train_matrices(path);
  std::filesystem::remove(path);
  CHECK(r.n_dof() == m.n_dof());
  CHECK((r.system.K - m.system.K).cwiseAbs().maxCoeff() <= 1e-12 * m.system.K.cwiseAbs().maxCoeff());
  CHECK((r.system.M - m.system.M).cwiseAbs().maxCoeff() <= 1e-12 * m.system.M.cwiseAbs().maxCoeff());
  CHECK((r.Lt - m.Lt).norm() == 0.0);
  CHECK(r.wheel_offsets == m.wheel_offsets);
}
