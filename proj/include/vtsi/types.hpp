#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace vtsi {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using SparseRows = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using Index = Eigen::Index;

inline constexpr double kGravity = 9.81;

/// Raised when a linear solve, eigen-solve or pivot sequence fails.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mass, damping and stiffness of a linear structural subsystem
///   M u'' + C u' + K u = P
/// over its free degrees of freedom.
struct SecondOrderSystem {
  Mat M;
  Mat C;
  Mat K;
  Vec P;
  std::vector<std::string> labels;

  Index size() const { return M.rows(); }

  /// Throws std::invalid_argument on shape mismatch or asymmetric M/K.
  void validate() const;
};

}  // namespace vtsi
