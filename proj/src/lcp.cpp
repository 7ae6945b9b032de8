#include "vtsi/lcp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace vtsi {

namespace {

// Row r beats row s in the lexicographic ratio test on column c.
bool lex_less(const Mat& T, int r, int s, int c, int rhs, int n) {
  const double a = T(r, rhs) / T(r, c);
  const double b = T(s, rhs) / T(s, c);
  const double tol = 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
  if (a < b - tol) return true;
  if (a > b + tol) return false;
  for (int j = 0; j < n; ++j) {
    const double x = T(r, j) / T(r, c);
    const double y = T(s, j) / T(s, c);
    if (x < y - 1e-14) return true;
    if (x > y + 1e-14) return false;
  }
  return r > s;
}

// Re-solve the active principal subsystem to clean up pivoting round-off.
Vec polish(const Mat& A, const Vec& q, const Vec& z) {
  std::vector<int> active;
  for (Index i = 0; i < z.size(); ++i) {
    if (z(i) > 0.0) active.push_back(static_cast<int>(i));
  }
  if (active.empty()) return z;
  const Mat As = A(active, active);
  const Vec qs = q(active);
  Eigen::PartialPivLU<Mat> lu(As);
  const Vec zs = lu.solve(qs);
  if (!zs.allFinite()) return z;
  Vec out = Vec::Zero(z.size());
  out(active) = zs;
  return out;
}

}  // namespace

LcpResult lcp_solve(const Mat& A, const Vec& q, int max_pivots) {
  const int n = static_cast<int>(A.rows());
  if (A.cols() != n || q.size() != n) throw std::invalid_argument("lcp_solve: dimension mismatch");
  if (!A.allFinite() || !q.allFinite()) throw std::invalid_argument("lcp_solve: non-finite input");
  LcpResult result;
  if (n == 0 || q.maxCoeff() <= 0.0) {
    result.z = Vec::Zero(n);
    result.w = -q;
    return result;
  }
  if (max_pivots <= 0) max_pivots = 50 * n + 100;

  // Columns: w (0..n-1), z (n..2n-1), z0 (2n), rhs (2n+1).
  // Tableau rows read  w - A z - e z0 = -q.
  const int z0 = 2 * n, rhs = 2 * n + 1;
  Mat T = Mat::Zero(n, 2 * n + 2);
  T.leftCols(n).setIdentity();
  T.middleCols(n, n) = -A;
  T.col(z0).setConstant(-1.0);
  T.col(rhs) = -q;
  std::vector<int> basis(n);
  for (int i = 0; i < n; ++i) basis[i] = i;

  auto pivot = [&](int r, int c) {
    T.row(r) /= T(r, c);
    for (int i = 0; i < n; ++i) {
      if (i != r && T(i, c) != 0.0) T.row(i) -= T(i, c) * T.row(r);
    }
    const int left = basis[r];
    basis[r] = c;
    return left;
  };

  // z0 enters; the most negative rhs leaves (largest index on ties).
  int r = 0;
  for (int i = 1; i < n; ++i) {
    if (T(i, rhs) <= T(r, rhs)) r = i;
  }
  int leaving = pivot(r, z0);
  int pivots = 1;
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  const double pivot_tol = 1e-13 * scale;

  while (true) {
    if (pivots > max_pivots) throw LcpRayTermination("lcp_solve: pivot limit reached");
    const int entering = leaving < n ? leaving + n : leaving - n;
    int best = -1;
    for (int i = 0; i < n; ++i) {
      if (T(i, entering) <= pivot_tol) continue;
      if (best < 0 || lex_less(T, i, best, entering, rhs, n)) best = i;
    }
    if (best < 0) throw LcpRayTermination("lcp_solve: ray termination");
    // Prefer driving z0 out when it ties for the minimum ratio.
    for (int i = 0; i < n; ++i) {
      if (basis[i] == z0 && T(i, entering) > pivot_tol) {
        const double a = T(i, rhs) / T(i, entering);
        const double b = T(best, rhs) / T(best, entering);
        if (a <= b + 1e-12 * std::max(1.0, std::abs(b))) best = i;
      }
    }
    leaving = pivot(best, entering);
    ++pivots;
    if (leaving == z0) break;
  }

  Vec z = Vec::Zero(n);
  for (int i = 0; i < n; ++i) {
    if (basis[i] >= n && basis[i] < 2 * n) z(basis[i] - n) = std::max(0.0, T(i, rhs));
  }
  const Vec polished = polish(A, q, z);
  const Vec wp = A * polished - q;
  const double tol = 1e-9 * std::max(1.0, q.cwiseAbs().maxCoeff());
  if (polished.minCoeff() >= 0.0 && wp.minCoeff() >= -tol) z = polished;
  result.z = z;
  result.w = A * z - q;
  result.pivots = pivots;
  return result;
}

double lcp_residual(const Mat& A, const Vec& q, const Vec& z) {
  const Vec w = A * z - q;
  double r = 0.0;
  for (Index i = 0; i < z.size(); ++i) {
    const double d = A(i, i) != 0.0 ? A(i, i) : 1.0;
    r = std::max(r, std::abs(std::min(z(i), w(i) / d)));
  }
  return r;
}

}  // namespace vtsi
