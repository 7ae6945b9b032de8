#include <doctest.h>

#include <random>

#include "vtsi/lcp.hpp"

using namespace vtsi;

namespace {

// Unique solution of an SPD LCP by trying every active set.
Vec enumerate(const Mat& A, const Vec& q) {
  const int n = static_cast<int>(q.size());
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<int> act;
    for (int i = 0; i < n; ++i) {
      if (mask & (1 << i)) act.push_back(i);
    }
    Vec z = Vec::Zero(n);
    if (!act.empty()) {
      const int k = static_cast<int>(act.size());
      Mat As(k, k);
      Vec qs(k);
      for (int i = 0; i < k; ++i) {
        qs(i) = q(act[i]);
        for (int j = 0; j < k; ++j) As(i, j) = A(act[i], act[j]);
      }
      const Vec zs = As.ldlt().solve(qs);
      for (int i = 0; i < k; ++i) z(act[i]) = zs(i);
    }
    const Vec w = A * z - q;
    if (z.minCoeff() >= -1e-12 && w.minCoeff() >= -1e-12) return z;
  }
  return Vec();
}

}  // namespace

TEST_CASE("scalar problems") {
  Mat A(1, 1);
  A << 2.0;
  Vec q(1);
  q << -1.0;
  auto r = lcp_solve(A, q);
  CHECK(r.z(0) == 0.0);
  CHECK(r.w(0) == doctest::Approx(1.0));
  q << 3.0;
  r = lcp_solve(A, q);
  CHECK(r.z(0) == doctest::Approx(1.5));
  CHECK(std::abs(r.w(0)) < 1e-14);
}

TEST_CASE("random SPD problems match active-set enumeration") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 6;
    Mat B(n, n);
    Vec q(n);
    for (int i = 0; i < n; ++i) {
      q(i) = g(rng);
      for (int j = 0; j < n; ++j) B(i, j) = g(rng);
    }
    const Mat A = B * B.transpose() + 0.1 * Mat::Identity(n, n);
    const Vec ref = enumerate(A, q);
    REQUIRE(ref.size() == n);
    const auto r = lcp_solve(A, q);
    CHECK((r.z - ref).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, ref.cwiseAbs().maxCoeff()));
    CHECK(r.z.minCoeff() >= 0.0);
    CHECK(r.w.minCoeff() >= -1e-12);
    CHECK(lcp_residual(A, q, r.z) <= 1e-12);
  }
}

TEST_CASE("degenerate right-hand side") {
  const Mat A = Mat::Identity(3, 3);
  Vec q(3);
  q << 1.0, 1.0, 0.0;
  const auto r = lcp_solve(A, q);
  CHECK(r.z(0) == doctest::Approx(1.0));
  CHECK(r.z(1) == doctest::Approx(1.0));
  CHECK(r.z(2) == 0.0);
}

TEST_CASE("infeasible problems end on a ray") {
  Mat A(1, 1);
  A << -1.0;
  Vec q(1);
  q << 1.0;
  CHECK_THROWS_AS(lcp_solve(A, q), LcpRayTermination);
}

TEST_CASE("residual measures the worst complementarity violation") {
  const Mat A = 2.0 * Mat::Identity(2, 2);
  Vec q(2), z(2);
  q << 2.0, -1.0;
  z << 1.0, 0.0;
  CHECK(lcp_residual(A, q, z) == 0.0);
  z << 1.0, 0.25;
  CHECK(lcp_residual(A, q, z) == doctest::Approx(0.25));
}
