#include "vtsi/bridge.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace vtsi {

void SecondOrderSystem::validate() const {
  const Index n = M.rows();
  if (M.cols() != n || C.rows() != n || C.cols() != n || K.rows() != n || K.cols() != n ||
      P.size() != n) {
    throw std::invalid_argument("SecondOrderSystem: inconsistent matrix sizes");
  }
  if (!labels.empty() && static_cast<Index>(labels.size()) != n) {
    throw std::invalid_argument("SecondOrderSystem: label count does not match DOF count");
  }
  auto asymmetry = [](const Mat& A) {
    const double scale = A.norm();
    return scale > 0.0 ? (A - A.transpose()).norm() / scale : 0.0;
  };
  if (asymmetry(M) > 1e-12 || asymmetry(K) > 1e-12) {
    throw std::invalid_argument("SecondOrderSystem: M and K must be symmetric");
  }
}

std::array<std::array<double, 4>, 4> beam_stiffness(double EI, double l) {
  const double k = EI / (l * l * l);
  const double l2 = l * l;
  return {{{12 * k, 6 * l * k, -12 * k, 6 * l * k},
           {6 * l * k, 4 * l2 * k, -6 * l * k, 2 * l2 * k},
           {-12 * k, -6 * l * k, 12 * k, -6 * l * k},
           {6 * l * k, 2 * l2 * k, -6 * l * k, 4 * l2 * k}}};
}

std::array<std::array<double, 4>, 4> beam_consistent_mass(double mu, double l) {
  const double m = mu * l / 420.0;
  const double l2 = l * l;
  return {{{156 * m, 22 * l * m, 54 * m, -13 * l * m},
           {22 * l * m, 4 * l2 * m, 13 * l * m, -3 * l2 * m},
           {54 * m, 13 * l * m, 156 * m, -22 * l * m},
           {-13 * l * m, -3 * l2 * m, -22 * l * m, 4 * l2 * m}}};
}

namespace {

double checked_local_coordinate(double a, double l) {
  if (!(l > 0.0)) throw std::invalid_argument("element_influence: element length must be positive");
  const double slack = 1e-12 * l;
  if (a < -slack || a > l + slack) {
    throw std::invalid_argument("element_influence: a = " + std::to_string(a) +
                                " outside [0, " + std::to_string(l) + "]");
  }
  return std::clamp(a, 0.0, l);
}

}  // namespace

std::array<double, 4> element_influence(double a, double l) {
  a = checked_local_coordinate(a, l);
  const double b = l - a;
  const double l2 = l * l;
  const double l3 = l2 * l;
  return {b * b * (b + 3 * a) / l3, a * b * b / l2, a * a * (a + 3 * b) / l3, -a * a * b / l2};
}

std::array<double, 4> element_influence_derivative(double a, double l, int order) {
  a = checked_local_coordinate(a, l);
  const double s = a / l;
  switch (order) {
    case 1:
      return {(-6 * s + 6 * s * s) / l, 1 - 4 * s + 3 * s * s, (6 * s - 6 * s * s) / l,
              3 * s * s - 2 * s};
    case 2:
      return {(-6 + 12 * s) / (l * l), (-4 + 6 * s) / l, (6 - 12 * s) / (l * l), (6 * s - 2) / l};
    default:
      throw std::invalid_argument("element_influence_derivative: order must be 1 or 2");
  }
}

BridgeModel assemble_bridge(const BridgeSpec& spec) {
  if (spec.spans.empty()) throw std::invalid_argument("assemble_bridge: no spans");
  if (!(spec.E > 0.0) || !(spec.I > 0.0)) {
    throw std::invalid_argument("assemble_bridge: E and I must be positive");
  }
  if (spec.mu < 0.0) throw std::invalid_argument("assemble_bridge: negative mass per length");
  if (spec.approach_elements < 0) {
    throw std::invalid_argument("assemble_bridge: negative approach element count");
  }
  if (spec.approach_elements > 0 && spec.ends != EndCondition::fixed) {
    throw std::invalid_argument("assemble_bridge: approach segments require fixed ends");
  }
  for (const auto& span : spec.spans) {
    if (!(span.length > 0.0)) throw std::invalid_argument("assemble_bridge: zero-length span");
    if (span.elements < 1) throw std::invalid_argument("assemble_bridge: span needs >= 1 element");
  }

  BridgeModel model;
  model.ends = spec.ends;
  const double EI = spec.E * spec.I;

  const double first_le = spec.spans.front().length / spec.spans.front().elements;
  const double last_le = spec.spans.back().length / spec.spans.back().elements;
  const int approach = spec.approach_elements;

  std::vector<double>& x = model.node_x;
  for (int i = approach; i >= 1; --i) x.push_back(-i * first_le);
  double cursor = 0.0;
  x.push_back(cursor);
  model.support_x.push_back(cursor);
  std::vector<int> support_nodes{static_cast<int>(x.size()) - 1};
  for (const auto& span : spec.spans) {
    const double le = span.length / span.elements;
    for (int e = 1; e <= span.elements; ++e) {
      x.push_back(e == span.elements ? cursor + span.length : cursor + e * le);
    }
    cursor += span.length;
    model.support_x.push_back(cursor);
    support_nodes.push_back(static_cast<int>(x.size()) - 1);
  }
  for (int i = 1; i <= approach; ++i) x.push_back(cursor + i * last_le);
  model.x_start = 0.0;
  model.x_end = cursor;

  const int n_nodes = static_cast<int>(x.size());
  for (int n = 0; n + 1 < n_nodes; ++n) {
    const double l = x[n + 1] - x[n];
    if (!(l > 0.0)) throw std::invalid_argument("assemble_bridge: zero-length element");
    model.elements.push_back({l, EI, spec.mu, n, n + 1});
  }

  std::vector<bool> restrained(2 * n_nodes, false);
  for (int n = 0; n < approach; ++n) restrained[2 * n] = restrained[2 * n + 1] = true;
  for (int n = n_nodes - approach; n < n_nodes; ++n) restrained[2 * n] = restrained[2 * n + 1] = true;
  for (int s : support_nodes) restrained[2 * s] = true;
  if (spec.ends == EndCondition::fixed) {
    restrained[2 * support_nodes.front() + 1] = true;
    restrained[2 * support_nodes.back() + 1] = true;
  }

  model.free_index.assign(2 * n_nodes, -1);
  int n_free = 0;
  std::vector<std::string> labels;
  for (int d = 0; d < 2 * n_nodes; ++d) {
    if (restrained[d]) continue;
    model.free_index[d] = n_free++;
    labels.push_back((d % 2 == 0 ? "w" : "theta") + std::to_string(d / 2));
  }
  if (n_free == 0) throw std::invalid_argument("assemble_bridge: all DOFs are constrained");

  SecondOrderSystem& sys = model.system;
  sys.M = Mat::Zero(n_free, n_free);
  sys.K = Mat::Zero(n_free, n_free);
  sys.C = Mat::Zero(n_free, n_free);
  sys.P = Vec::Zero(n_free);
  sys.labels = std::move(labels);

  for (const auto& el : model.elements) {
    const auto ke = beam_stiffness(el.EI, el.length);
    const auto me = beam_consistent_mass(el.mu, el.length);
    const double q = -el.mu * kGravity;
    const double l = el.length;
    const std::array<double, 4> fe{q * l / 2, q * l * l / 12, q * l / 2, -q * l * l / 12};
    const std::array<int, 4> dofs{model.free_index[2 * el.left], model.free_index[2 * el.left + 1],
                                  model.free_index[2 * el.right],
                                  model.free_index[2 * el.right + 1]};
    for (int i = 0; i < 4; ++i) {
      if (dofs[i] < 0) continue;
      if (spec.self_weight) sys.P(dofs[i]) += fe[i];
      for (int j = 0; j < 4; ++j) {
        if (dofs[j] < 0) continue;
        sys.K(dofs[i], dofs[j]) += ke[i][j];
        sys.M(dofs[i], dofs[j]) += me[i][j];
      }
    }
  }
  return model;
}

BridgeModel rigid_bridge(double x_start, double x_end) {
  if (!(x_end > x_start)) throw std::invalid_argument("rigid_bridge: empty extent");
  BridgeModel model;
  model.node_x = {x_start, x_end};
  model.elements.push_back({x_end - x_start, 1.0, 0.0, 0, 1});
  model.free_index.assign(4, -1);
  model.x_start = x_start;
  model.x_end = x_end;
  model.support_x = {x_start, x_end};
  model.system.M = Mat::Zero(0, 0);
  model.system.C = Mat::Zero(0, 0);
  model.system.K = Mat::Zero(0, 0);
  model.system.P = Vec::Zero(0);
  return model;
}

std::vector<double> natural_frequencies(const BridgeModel& model, int count) {
  const auto& sys = model.system;
  if (count < 0 || count > sys.size()) {
    throw std::invalid_argument("natural_frequencies: requested more modes than DOFs");
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> solver(sys.K, sys.M, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw SolverError("natural_frequencies: generalized eigen-solver did not converge");
  }
  std::vector<double> hz;
  hz.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double w2 = solver.eigenvalues()(i);
    if (!(w2 > 0.0)) throw SolverError("natural_frequencies: non-positive eigenvalue");
    hz.push_back(std::sqrt(w2) / (2.0 * std::numbers::pi));
  }
  return hz;
}

RayleighCoefficients rayleigh_coefficients(double omega_i, double omega_j, double xi) {
  if (std::abs(omega_i - omega_j) <= 1e-12 * std::max(std::abs(omega_i), std::abs(omega_j))) {
    throw std::invalid_argument("rayleigh_coefficients: repeated frequency pair");
  }
  return {2.0 * xi * omega_i * omega_j / (omega_i + omega_j), 2.0 * xi / (omega_i + omega_j)};
}

BridgeModel rayleigh_damping(BridgeModel model, double xi, std::pair<int, int> modes) {
  const auto [i, j] = modes;
  if (i < 1 || j < 1) throw std::invalid_argument("rayleigh_damping: modes are 1-based");
  const auto hz = natural_frequencies(model, std::max(i, j));
  const double two_pi = 2.0 * std::numbers::pi;
  const auto c = rayleigh_coefficients(two_pi * hz[i - 1], two_pi * hz[j - 1], xi);
  model.system.C = c.alpha * model.system.M + c.beta * model.system.K;
  return model;
}

}  // namespace vtsi
