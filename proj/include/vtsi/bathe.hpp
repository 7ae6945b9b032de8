#pragma once

#include "vtsi/coupled_system.hpp"

namespace vtsi {

/// Composite scheme: trapezoidal rule to t + dt/2, then three-point
/// backward Euler to t + dt, with the constraints (bilateral or unilateral)
/// enforced at both sub-steps.
class BatheIntegrator {
 public:
  BatheIntegrator(const CoupledSystem& system, double dt, ContactMode mode = ContactMode::bilateral);

  State substep_half(const State& s) const;
  State substep_full(const State& s, const State& half) const;
  /// Both sub-steps; the intermediate state is written to `half` if given.
  State step(const State& s, State* half = nullptr) const;

  double dt() const { return dt_; }
  ContactMode mode() const { return mode_; }

 private:
  struct Stage {
    Eigen::PartialPivLU<Mat> train;
    Eigen::SimplicialLDLT<SparseMat> bridge;
    Mat At;  // Mbar_t^-1 Lt^T
  };

  void factor(Stage& stage, double cm, double cc) const;
  // Solves both predictors, the multiplier problem at time tau and corrects.
  void constrain(const Stage& stage, double tau, const Vec& rt, const Vec& rb, State& out) const;

  const CoupledSystem& sys_;
  double dt_;
  ContactMode mode_;
  Stage half_, full_;
};

}  // namespace vtsi
