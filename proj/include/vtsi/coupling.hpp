#pragma once

#include <optional>
#include <vector>

#include "vtsi/bridge.hpp"
#include "vtsi/train.hpp"
#include "vtsi/types.hpp"

namespace vtsi {

enum class Interpolation { hermite, bspline };

/// Wheel/bridge interface at one instant.
struct CouplingState {
  double t = 0.0;
  std::vector<double> x_w;
  std::vector<bool> active;
  SparseRows Lb;  // n_wheels x n_bridge_free
  Vec rho;        // elevation under each wheel, up positive
};

struct Location {
  int element = 0;
  double a = 0.0;
};

std::vector<double> wheel_positions(const std::vector<double>& x0, double speed, double t);

/// Host element of x on the load-carrying span. A wheel on an interior
/// joint belongs to the left element.
std::optional<Location> locate(const BridgeModel& model, double x);

/// Hermite influence rows (derivative order 0) or their d/dx, d2/dx2
/// (orders 1, 2). Off-span rows are empty.
SparseRows assemble_Lb(const BridgeModel& model, const std::vector<double>& x, int order = 0);

/// r = Lt ut + Lb ub + rho.
Vec constraint_residual(const Mat& Lt, const Vec& ut, const Vec& ub, const CouplingState& state);

}  // namespace vtsi
