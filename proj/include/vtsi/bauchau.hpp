#pragma once

#include "vtsi/coupled_system.hpp"

namespace vtsi {

/// Energy-preserving scheme: dynamics at mid-step, constraints at end-step.
/// Multipliers come from a wheel-sized Schur system.
class BauchauIntegrator {
 public:
  BauchauIntegrator(const CoupledSystem& system, double dt);

  /// Advances one step. The returned lambda is the mid-step value and the
  /// returned acceleration is (v_{n+1} - v_n) / dt.
  State step(const State& s) const;

  double dt() const { return dt_; }

 private:
  const CoupledSystem& sys_;
  double dt_;
  Eigen::PartialPivLU<Mat> train_bar_;
  Eigen::SimplicialLDLT<SparseMat> bridge_bar_;
  Mat Xt_;  // Mbar_t^-1 Lt^T
};

}  // namespace vtsi
