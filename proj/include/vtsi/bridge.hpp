#pragma once

#include <array>
#include <utility>
#include <vector>

#include "vtsi/types.hpp"

namespace vtsi {

enum class EndCondition { fixed, simply_supported };

struct SpanSpec {
  double length = 0.0;
  int elements = 1;

  bool operator==(const SpanSpec&) const = default;
};

struct BridgeSpec {
  std::vector<SpanSpec> spans;
  double E = 0.0;   // Pa
  double I = 0.0;   // m^4
  double mu = 0.0;  // kg/m
  EndCondition ends = EndCondition::fixed;
  // Fully restrained elements added beyond each end, same length as the
  // adjacent span element.
  int approach_elements = 0;
  bool self_weight = false;

  bool operator==(const BridgeSpec&) const = default;
};

struct BeamElement {
  double length = 0.0;
  double EI = 0.0;
  double mu = 0.0;
  int left = 0;
  int right = 1;
};

/// Transverse Euler-Bernoulli frame. Nodal DOFs are (w, theta) with w up
/// and theta = dw/dx, numbered node by node from the left. Restrained DOFs
/// are removed from `system`; `free_index` maps full DOF -> reduced index.
struct BridgeModel {
  std::vector<BeamElement> elements;
  std::vector<double> node_x;
  std::vector<int> free_index;
  SecondOrderSystem system;
  double x_start = 0.0;
  double x_end = 0.0;
  EndCondition ends = EndCondition::fixed;
  std::vector<double> support_x;

  int n_nodes() const { return static_cast<int>(node_x.size()); }
  int n_free() const { return static_cast<int>(system.size()); }
  int full_dof(int node, int component) const { return 2 * node + component; }
  bool is_free(int full) const { return free_index[full] >= 0; }
};

BridgeModel assemble_bridge(const BridgeSpec& spec);

/// Zero-DOF surrogate for an infinitely stiff deck over [x_start, x_end].
BridgeModel rigid_bridge(double x_start, double x_end);

/// Ascending natural frequencies in Hz from K phi = w^2 M phi.
std::vector<double> natural_frequencies(const BridgeModel& model, int count);

struct RayleighCoefficients {
  double alpha = 0.0;  // mass proportional
  double beta = 0.0;   // stiffness proportional
};

RayleighCoefficients rayleigh_coefficients(double omega_i, double omega_j, double xi);

/// Returns a copy with C = alpha M + beta K fitted so that modes i and j
/// (1-based) have damping ratio xi.
BridgeModel rayleigh_damping(BridgeModel model, double xi, std::pair<int, int> modes = {1, 2});

/// Hermite influence row of a unit point load at distance a from the left
/// node of an element of length l:
///   [b^2(b+3a)/l^3, a b^2/l^2, a^2(a+3b)/l^3, -a^2 b/l^2],  b = l - a.
std::array<double, 4> element_influence(double a, double l);

/// d^order/da^order of element_influence, order in {1, 2}.
std::array<double, 4> element_influence_derivative(double a, double l, int order);

std::array<std::array<double, 4>, 4> beam_stiffness(double EI, double l);
std::array<std::array<double, 4>, 4> beam_consistent_mass(double mu, double l);

}  // namespace vtsi
