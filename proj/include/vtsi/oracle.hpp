#pragma once

#include <memory>

#include "vtsi/coupled_system.hpp"

namespace vtsi {

/// Residuals of the first-order DAE with y = (ut, ub, vt, vb):
///   F1 = Mt vt' + Ct vt + Kt ut + Lt^T lambda - Pt
///   F2 = Mb vb' + Cb vb + Kb ub + Lb(t)^T lambda - Pb
///   F3 = ut' - vt,  F4 = ub' - vb
///   F5 = Lt ut + Lb(t) ub + rho(t)
struct DaeResidual {
  Vec F1, F2, F3, F4, F5;
  double max_abs() const;
};

/// `s` supplies (u, v, lambda, t); `rate` supplies (u', v') in its u/v fields.
DaeResidual dae_residual(const CoupledSystem& system, const State& s, const State& rate);

/// Fixed-step BDF of order 1 or 2 on the index-3 system, one monolithic
/// sparse solve in (u, v, lambda) per step. Order 2 starts with one order-1 step.
class BdfIntegrator {
 public:
  BdfIntegrator(const CoupledSystem& system, double dt, int order);

  /// `previous` is the state before `s` (ignored for order 1 or when null).
  State step(const State& s, const State* previous) const;

  double dt() const { return dt_; }
  int order() const { return order_; }

 private:
  const CoupledSystem& sys_;
  double dt_;
  int order_;
  SparseMat M_, C_, K_;  // block diagonal over (train, bridge)
};

/// Train with the wheel DOFs and contact forces eliminated through
/// u_w = Lb(t) u_b; trapezoidal Newmark with per-step matrices. Needs
/// Hermite rows, no irregularity and Lt = -I on the wheel DOFs.
class DirectCoupledIntegrator {
 public:
  DirectCoupledIntegrator(const CoupledSystem& system, double dt);

  struct Matrices {
    SparseMat M, C, K;
    Vec F;
  };
  /// Modified system matrices over (u_c, u_b) at time t.
  Matrices matrices(double t) const;

  /// Completes `s` (from static_init) with consistent accelerations.
  State initial(const State& s) const;
  State step(const State& s) const;

  double dt() const { return dt_; }

 private:
  // Fills the wheel entries of ut/vt/at and lambda from the reduced state.
  void expand(State& s) const;

  const CoupledSystem& sys_;
  double dt_;
  TrainPartition p_;
  std::vector<int> carriage_, wheel_;  // wheel_[i] is the DOF of constraint row i
};

}  // namespace vtsi
