#pragma once

#include <vector>

#include "vtsi/bridge.hpp"
#include "vtsi/types.hpp"

namespace vtsi {

/// Clamped knot vector with unit spacing for n_ctrl control points of order k:
/// k zeros, 1 .. n_ctrl-k, then k copies of n_ctrl-k+1.
std::vector<double> open_uniform_knots(int n_ctrl, int k = 4);

/// Cox-de Boor N_{i,k}(t). The last knot span is closed on the right.
double bspline_basis(const std::vector<double>& knots, int i, int k, double t);

struct SplineBasisRow {
  double t_param = 0.0;
  int first = 0;  // index of the first of the k nonzero basis functions
  std::vector<double> values;
};

SplineBasisRow spline_row(const std::vector<double>& knots, int n_ctrl, int k, double t);

/// Parameter t where the abscissa curve X(t) = sum x_j N_{j,4}(t) through
/// the node coordinates equals x.
double spline_parameter(const BridgeModel& model, double x);

/// Cubic B-spline influence rows with the bridge nodes as control polygon.
/// Only deflection DOFs get weights. Requires fixed ends.
SparseRows assemble_Lb_spline(const BridgeModel& model, const std::vector<double>& x);

}  // namespace vtsi
