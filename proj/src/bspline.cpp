#include "vtsi/bspline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>


namespace vtsi {

std::vector<double> open_uniform_knots(int n_ctrl, int k) {
  if (k < 1 || n_ctrl < k) throw std::invalid_argument("open_uniform_knots: need n_ctrl >= k >= 1");
  std::vector<double> knots;
  knots.reserve(n_ctrl + k);
  const double last = n_ctrl - k + 1;
  for (int i = 0; i < k; ++i) knots.push_back(0.0);
  for (int i = 1; i <= n_ctrl - k; ++i) knots.push_back(i);
  for (int i = 0; i < k; ++i) knots.push_back(last);
  return knots;
}

namespace {

void check_parameter(const std::vector<double>& knots, int k, double t) {
  const double lo = knots[k - 1];
  const double hi = knots[knots.size() - k];
  if (t < lo || t > hi) throw std::invalid_argument("bspline_basis: t outside knot span");
}

}  // namespace

double bspline_basis(const std::vector<double>& knots, int i, int k, double t) {
  const int m = static_cast<int>(knots.size());
  if (k < 1 || i < 0 || i + k > m - 1) throw std::invalid_argument("bspline_basis: bad index");
  check_parameter(knots, k, t);
  if (k == 1) {
    const double hi = knots[m - 1];
    if (t == hi) {
      // Closed right end: the last non-empty span owns t.
      int last = m - 2;
      while (last > 0 && knots[last] == knots[last + 1]) --last;
      return i == last ? 1.0 : 0.0;
    }
    return knots[i] <= t && t < knots[i + 1] ? 1.0 : 0.0;
  }
  double value = 0.0;
  const double d1 = knots[i + k - 1] - knots[i];
  const double d2 = knots[i + k] - knots[i + 1];
  if (d1 > 0.0) value += (t - knots[i]) / d1 * bspline_basis(knots, i, k - 1, t);
  if (d2 > 0.0) value += (knots[i + k] - t) / d2 * bspline_basis(knots, i + 1, k - 1, t);
  return value;
}

SplineBasisRow spline_row(const std::vector<double>& knots, int n_ctrl, int k, double t) {
  if (static_cast<int>(knots.size()) != n_ctrl + k) {
    throw std::invalid_argument("spline_row: knot count must be n_ctrl + k");
  }
  check_parameter(knots, k, t);
  // Span index s with knots[s] <= t < knots[s+1], clamped to the last span.
  int s = static_cast<int>(std::upper_bound(knots.begin(), knots.end(), t) - knots.begin()) - 1;
  s = std::clamp(s, k - 1, n_ctrl - 1);
  SplineBasisRow row;
  row.t_param = t;
  row.first = s - k + 1;
  // Triangular de Boor evaluation of the k nonzero functions.
  std::vector<double> N(k, 0.0), left(k), right(k);
  N[0] = 1.0;
  for (int j = 1; j < k; ++j) {
    left[j] = t - knots[s + 1 - j];
    right[j] = knots[s + j] - t;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      const double temp = N[r] / (right[r + 1] + left[j - r]);
      N[r] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    N[j] = saved;
  }
  row.values = std::move(N);
  return row;
}

double spline_parameter(const BridgeModel& model, double x) {
  const auto& nx = model.node_x;
  const int n = model.n_nodes();
  const auto knots = open_uniform_knots(n, 4);
  const double t_hi = knots.back();
  if (x <= nx.front()) return 0.0;
  if (x >= nx.back()) return t_hi;
  auto X = [&](double t) {
    const auto row = spline_row(knots, n, 4, t);
    double s = 0.0;
    for (int j = 0; j < 4; ++j) s += row.values[j] * nx[row.first + j];
    return s;
  };
  // X is strictly increasing for increasing node coordinates.
  double lo = 0.0, hi = t_hi;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, t_hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (X(mid) < x ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

SparseRows assemble_Lb_spline(const BridgeModel& model, const std::vector<double>& x) {
  if (model.ends != EndCondition::fixed) {
    throw std::invalid_argument(
        "assemble_Lb_spline: B-spline interpolation requires fixed bridge ends");
  }
  const int n = model.n_nodes();
  if (n < 4) throw std::invalid_argument("assemble_Lb_spline: need at least four nodes");
  const auto knots = open_uniform_knots(n, 4);
  SparseRows Lb(static_cast<Index>(x.size()), model.n_free());
  std::vector<Eigen::Triplet<double>> entries;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < model.node_x.front() || x[i] > model.node_x.back()) continue;
    const auto row = spline_row(knots, n, 4, spline_parameter(model, x[i]));
    for (int j = 0; j < 4; ++j) {
      const int dof = model.free_index[2 * (row.first + j)];
      if (dof >= 0 && row.values[j] != 0.0) entries.emplace_back(static_cast<int>(i), dof, row.values[j]);
    }
  }
  Lb.setFromTriplets(entries.begin(), entries.end());
  return Lb;
}

}  // namespace vtsi
