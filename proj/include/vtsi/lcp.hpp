#pragma once

#include "vtsi/types.hpp"

namespace vtsi {

/// Lemke pivoting ended on an unbounded ray; no solution was found.
class LcpRayTermination : public SolverError {
 public:
  using SolverError::SolverError;
};

struct LcpResult {
  Vec z;
  Vec w;  // A z - q
  int pivots = 0;
};

/// Finds z >= 0 with w = A z - q >= 0 and z'w = 0 (Lemke, covering vector
/// of ones, lexicographic ratio test).
LcpResult lcp_solve(const Mat& A, const Vec& q, int max_pivots = 0);

/// max_i |min(z_i, w_i / A_ii)|, in the units of z.
double lcp_residual(const Mat& A, const Vec& q, const Vec& z);

}  // namespace vtsi
