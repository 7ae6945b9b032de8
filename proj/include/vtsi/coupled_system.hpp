#pragma once

#include <optional>
#include <vector>

#include "vtsi/bridge.hpp"
#include "vtsi/coupling.hpp"
#include "vtsi/irregularity.hpp"
#include "vtsi/train.hpp"
#include "vtsi/types.hpp"

namespace vtsi {

using SparseMat = Eigen::SparseMatrix<double>;

/// Train moving at constant speed over a bridge. The front wheel is at
/// `front_position` at t = 0.
class CoupledSystem {
 public:
  CoupledSystem(BridgeModel bridge, TrainModel train, double speed, double front_position,
                Interpolation interp = Interpolation::hermite,
                std::optional<IrregularityProfile> irregularity = std::nullopt);

  const BridgeModel& bridge() const { return bridge_; }
  const TrainModel& train() const { return train_; }
  double speed() const { return speed_; }
  Interpolation interpolation() const { return interp_; }
  const std::optional<IrregularityProfile>& irregularity() const { return irregularity_; }
  const std::vector<double>& initial_positions() const { return x0_; }

  int n_train() const { return train_.n_dof(); }
  int n_bridge() const { return bridge_.n_free(); }
  int n_wheels() const { return train_.n_wheels(); }

  const SparseMat& Mb() const { return Mb_; }
  const SparseMat& Cb() const { return Cb_; }
  const SparseMat& Kb() const { return Kb_; }

  std::vector<double> positions(double t) const { return wheel_positions(x0_, speed_, t); }
  CouplingState coupling(double t) const;
  /// Irregularity under a wheel at x (zero off-span).
  double rho_at(double x) const;

 private:
  BridgeModel bridge_;
  TrainModel train_;
  double speed_;
  Interpolation interp_;
  std::optional<IrregularityProfile> irregularity_;
  std::vector<double> x0_;
  SparseMat Mb_, Cb_, Kb_;
};

/// Full state of both subsystems. `lambda` holds the contact forces of the
/// step that produced this state (the mid-step value for Bauchau).
struct State {
  double t = 0.0;
  Vec ut, vt, at;
  Vec ub, vb, ab;
  Vec lambda;
  Vec lambda_half;  // Bathe first sub-step forces
  double constraint_residual = 0.0;      // max |gap| over bilateral rows, m
  double penetration = 0.0;              // max(gap, 0), m
  double complementarity_residual = 0.0; // LCP residual, N
};

/// Static equilibrium under the constant loads with the constraints at time t.
State static_init(const CoupledSystem& system, double t = 0.0);

enum class ContactMode { bilateral, lcp };

}  // namespace vtsi
