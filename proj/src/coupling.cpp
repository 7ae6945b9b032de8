#include "vtsi/coupling.hpp"

#include <algorithm>
#include <stdexcept>

namespace vtsi {

std::vector<double> wheel_positions(const std::vector<double>& x0, double speed, double t) {
  std::vector<double> x(x0.size());
  for (std::size_t i = 0; i < x0.size(); ++i) x[i] = x0[i] + speed * t;
  return x;
}

std::optional<Location> locate(const BridgeModel& model, double x) {
  if (x < model.x_start || x > model.x_end || model.elements.empty()) return std::nullopt;
  const auto& nx = model.node_x;
  // First node with coordinate >= x; the element ending there hosts x.
  const int first = static_cast<int>(std::lower_bound(nx.begin(), nx.end(), model.x_start) - nx.begin());
  const int right =
      std::max(static_cast<int>(std::lower_bound(nx.begin(), nx.end(), x) - nx.begin()), first + 1);
  const int left = right - 1;
  // Elements chain consecutive nodes, so element index equals left node.
  const auto& el = model.elements.at(left);
  return Location{left, std::clamp(x - nx[left], 0.0, el.length)};
}

SparseRows assemble_Lb(const BridgeModel& model, const std::vector<double>& x, int order) {
  if (order < 0 || order > 2) throw std::invalid_argument("assemble_Lb: order must be 0, 1 or 2");
  const int n = static_cast<int>(x.size());
  SparseRows Lb(n, model.n_free());
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(4 * n);
  for (int i = 0; i < n; ++i) {
    const auto loc = locate(model, x[i]);
    if (!loc) continue;
    const auto& el = model.elements[loc->element];
    const auto row = order == 0 ? element_influence(loc->a, el.length)
                                : element_influence_derivative(loc->a, el.length, order);
    const std::array<int, 4> dofs{model.free_index[2 * el.left], model.free_index[2 * el.left + 1],
                                  model.free_index[2 * el.right],
                                  model.free_index[2 * el.right + 1]};
    for (int k = 0; k < 4; ++k) {
      if (dofs[k] >= 0 && row[k] != 0.0) entries.emplace_back(i, dofs[k], row[k]);
    }
  }
  Lb.setFromTriplets(entries.begin(), entries.end());
  return Lb;
}

Vec constraint_residual(const Mat& Lt, const Vec& ut, const Vec& ub, const CouplingState& state) {
  if (Lt.cols() != ut.size() || state.Lb.cols() != ub.size() || Lt.rows() != state.Lb.rows() ||
      state.rho.size() != Lt.rows()) {
    throw std::invalid_argument("constraint_residual: dimension mismatch");
  }
  return Lt * ut + state.Lb * ub + state.rho;
}

}  // namespace vtsi
