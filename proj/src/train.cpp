#include "vtsi/train.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace vtsi {

void CarSpec::validate() const {
  if (m_c < 0 || I_c < 0 || m_w < 0) throw std::invalid_argument("CarSpec: negative mass");
  if (!(k_s > 0)) throw std::invalid_argument("CarSpec: suspension stiffness must be positive");
  if (c_s < 0) throw std::invalid_argument("CarSpec: negative suspension damping");
  if (!(l_c > 0)) throw std::invalid_argument("CarSpec: wheel spacing must be positive");
  if (l_ct < l_c) throw std::invalid_argument("CarSpec: car length shorter than wheel spacing");
}

TrainModel build_car(const CarSpec& spec) {
  spec.validate();
  const double h = spec.l_c / 2.0;

  // Suspension elongation gradients w.r.t. (heave, pitch, rear wheel, front wheel).
  Mat coupling(4, 4);
  coupling << 2, 0, -1, -1,
              0, 2 * h * h, h, -h,
              -1, h, 1, 0,
              -1, -h, 0, 1;

  TrainModel model;
  auto& sys = model.system;
  sys.M = Vec((Vec(4) << spec.m_c, spec.I_c, spec.m_w, spec.m_w).finished()).asDiagonal();
  sys.K = spec.k_s * coupling;
  sys.C = spec.c_s * coupling;
  sys.P = -kGravity * (Vec(4) << spec.m_c, 0.0, spec.m_w, spec.m_w).finished();
  sys.labels = {"car1_heave", "car1_pitch", "wheel1", "wheel2"};

  model.Lt = Mat::Zero(2, 4);
  model.Lt(0, 2) = -1.0;
  model.Lt(1, 3) = -1.0;
  model.wheel_offsets = {0.0, spec.l_c};
  model.carriage_dofs = {0, 1};
  model.wheel_dofs = {2, 3};
  model.overall_length = spec.l_ct;
  return model;
}

namespace {

// Merge map: full index -> reduced index, after validating the merge list.
std::vector<int> merge_map(int n, const std::vector<DofMerge>& merges) {
  std::vector<int> target(n);
  for (int i = 0; i < n; ++i) target[i] = i;
  std::vector<bool> dropped(n, false), kept(n, false);
  for (const auto& m : merges) {
    if (m.keep < 0 || m.keep >= n || m.drop < 0 || m.drop >= n) {
      throw std::invalid_argument("build_train: articulation DOF out of range");
    }
    if (m.keep == m.drop) throw std::invalid_argument("build_train: DOF merged with itself");
    if (dropped[m.drop]) throw std::invalid_argument("build_train: DOF merged twice");
    dropped[m.drop] = true;
    kept[m.keep] = true;
    target[m.drop] = m.keep;
  }
  for (int i = 0; i < n; ++i) {
    if (dropped[i] && kept[i]) {
      throw std::invalid_argument("build_train: chained or cyclic articulation merge");
    }
  }
  std::vector<int> reduced(n, -1);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    if (!dropped[i]) reduced[i] = next++;
  }
  std::vector<int> map(n);
  for (int i = 0; i < n; ++i) map[i] = reduced[target[i]];
  return map;
}

}  // namespace

TrainModel build_train(const std::vector<CarSpec>& cars,
                       const std::optional<std::vector<double>>& gaps,
                       const std::vector<DofMerge>& shared_dofs) {
  if (cars.empty()) throw std::invalid_argument("build_train: no cars");
  if (gaps && gaps->size() + 1 != cars.size()) {
    throw std::invalid_argument("build_train: need exactly one gap between consecutive cars");
  }

  const int n_cars = static_cast<int>(cars.size());
  const int n_full = 4 * n_cars;
  Mat M = Mat::Zero(n_full, n_full), C = M, K = M;
  Vec P = Vec::Zero(n_full);
  Mat Lt = Mat::Zero(2 * n_cars, n_full);
  std::vector<std::string> labels;
  std::vector<bool> is_wheel(n_full, false);
  std::vector<double> offsets;
  double overall = 0.0;

  double rear = 0.0;
  for (int c = 0; c < n_cars; ++c) {
    const TrainModel car = build_car(cars[c]);
    const int o = 4 * c;
    M.block(o, o, 4, 4) = car.system.M;
    C.block(o, o, 4, 4) = car.system.C;
    K.block(o, o, 4, 4) = car.system.K;
    P.segment(o, 4) = car.system.P;
    Lt(2 * c, o + 2) = -1.0;
    Lt(2 * c + 1, o + 3) = -1.0;
    is_wheel[o + 2] = is_wheel[o + 3] = true;
    const std::string id = std::to_string(c + 1);
    labels.push_back("car" + id + "_heave");
    labels.push_back("car" + id + "_pitch");
    labels.push_back("wheel" + std::to_string(2 * c + 1));
    labels.push_back("wheel" + std::to_string(2 * c + 2));

    offsets.push_back(rear);
    offsets.push_back(rear + cars[c].l_c);
    overall += cars[c].l_ct;
    if (c + 1 < n_cars) {
      const double gap = gaps ? (*gaps)[c]
                              : 0.5 * (cars[c].l_ct - cars[c].l_c) +
                                    0.5 * (cars[c + 1].l_ct - cars[c + 1].l_c);
      if (gap < 0) throw std::invalid_argument("build_train: negative gap between cars");
      rear += cars[c].l_c + gap;
    }
  }

  const std::vector<int> map = merge_map(n_full, shared_dofs);
  const int n = n_full == 0 ? 0 : *std::max_element(map.begin(), map.end()) + 1;
  Mat T = Mat::Zero(n_full, n);
  for (int i = 0; i < n_full; ++i) T(i, map[i]) = 1.0;

  TrainModel model;
  model.system.M = T.transpose() * M * T;
  model.system.C = T.transpose() * C * T;
  model.system.K = T.transpose() * K * T;
  model.system.P = T.transpose() * P;
  model.system.labels.resize(n);
  model.Lt = Lt * T;
  model.wheel_offsets = offsets;
  model.overall_length = overall;

  std::vector<int> kind(n, -1);  // 0 carriage, 1 wheel
  for (int i = 0; i < n_full; ++i) {
    const int r = map[i];
    const int k = is_wheel[i] ? 1 : 0;
    if (kind[r] >= 0 && kind[r] != k) {
      throw std::invalid_argument("build_train: articulation merges a wheel DOF with a carriage DOF");
    }
    kind[r] = k;
    if (model.system.labels[r].empty()) model.system.labels[r] = labels[i];
  }
  for (int r = 0; r < n; ++r) (kind[r] == 1 ? model.wheel_dofs : model.carriage_dofs).push_back(r);
  return model;
}

TrainPartition partition(const TrainModel& model) {
  const auto& c = model.carriage_dofs;
  const auto& w = model.wheel_dofs;
  const int n = model.n_dof();
  std::vector<int> seen(n, 0);
  for (int i : c) ++seen.at(i);
  for (int i : w) ++seen.at(i);
  for (int i = 0; i < n; ++i) {
    if (seen[i] > 1) throw std::invalid_argument("partition: DOF listed in both partitions");
    if (seen[i] == 0) throw std::invalid_argument("partition: DOF missing from partition");
  }
  const auto& s = model.system;
  TrainPartition p;
  p.Mcc = s.M(c, c); p.Mcw = s.M(c, w); p.Mwc = s.M(w, c); p.Mww = s.M(w, w);
  p.Ccc = s.C(c, c); p.Ccw = s.C(c, w); p.Cwc = s.C(w, c); p.Cww = s.C(w, w);
  p.Kcc = s.K(c, c); p.Kcw = s.K(c, w); p.Kwc = s.K(w, c); p.Kww = s.K(w, w);
  p.Pc = s.P(c);
  p.Pw = s.P(w);
  return p;
}

SecondOrderSystem reassemble(const TrainPartition& p, const TrainModel& layout) {
  const auto& c = layout.carriage_dofs;
  const auto& w = layout.wheel_dofs;
  const int n = layout.n_dof();
  SecondOrderSystem s;
  s.M = Mat::Zero(n, n);
  s.C = Mat::Zero(n, n);
  s.K = Mat::Zero(n, n);
  s.P = Vec::Zero(n);
  s.M(c, c) = p.Mcc; s.M(c, w) = p.Mcw; s.M(w, c) = p.Mwc; s.M(w, w) = p.Mww;
  s.C(c, c) = p.Ccc; s.C(c, w) = p.Ccw; s.C(w, c) = p.Cwc; s.C(w, w) = p.Cww;
  s.K(c, c) = p.Kcc; s.K(c, w) = p.Kcw; s.K(w, c) = p.Kwc; s.K(w, w) = p.Kww;
  s.P(c) = p.Pc;
  s.P(w) = p.Pw;
  s.labels = layout.system.labels;
  return s;
}

namespace {

std::vector<double> read_numbers(std::istream& in) {
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    std::string token;
    while (row >> token) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(token, &used));
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw std::invalid_argument("read_train_matrices: bad number '" + token + "'");
      }
    }
  }
  return values;
}

}  // namespace

TrainModel read_train_matrices(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("read_train_matrices: cannot open " + path.string());
  const auto v = read_numbers(in);
  if (v.size() < 2) throw std::invalid_argument("read_train_matrices: missing header");
  const int n = static_cast<int>(v[0]);
  const int nw = static_cast<int>(v[1]);
  if (n <= 0 || nw < 0 || v[0] != n || v[1] != nw) {
    throw std::invalid_argument("read_train_matrices: bad header");
  }
  const std::size_t expected = 2 + 3 * n * n + n + nw * n + nw;
  if (v.size() != expected) {
    throw std::invalid_argument("read_train_matrices: expected " + std::to_string(expected) +
                                " numbers, found " + std::to_string(v.size()));
  }
  std::size_t pos = 2;
  auto take = [&](int rows, int cols) {
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = v[pos++];
    return m;
  };
  TrainModel model;
  model.system.M = take(n, n);
  model.system.C = take(n, n);
  model.system.K = take(n, n);
  model.system.P = take(1, n).transpose();
  model.Lt = take(nw, n);
  for (int i = 0; i < nw; ++i) model.wheel_offsets.push_back(v[pos++]);
  model.system.validate();

  std::vector<bool> is_wheel(n, false);
  for (int r = 0; r < nw; ++r) {
    for (int j = 0; j < n; ++j) {
      if (model.Lt(r, j) != 0.0) is_wheel[j] = true;
    }
  }
  for (int j = 0; j < n; ++j) {
    (is_wheel[j] ? model.wheel_dofs : model.carriage_dofs).push_back(j);
    model.system.labels.push_back("dof" + std::to_string(j + 1));
  }
  if (!std::is_sorted(model.wheel_offsets.begin(), model.wheel_offsets.end())) {
    throw std::invalid_argument("read_train_matrices: wheel offsets must be non-decreasing");
  }
  model.overall_length = nw > 0 ? model.wheel_offsets.back() - model.wheel_offsets.front() : 0.0;
  return model;
}

void write_train_matrices(const TrainModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("write_train_matrices: cannot open " + path.string());
  out.precision(17);
  const int n = model.n_dof();
  out << "# n_dof n_wheels, then M, C, K, P, Lt, wheel offsets\n";
  out << n << ' ' << model.n_wheels() << '\n';
  auto put = [&](const Mat& m) {
    for (Index i = 0; i < m.rows(); ++i) {
      for (Index j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j);
      out << '\n';
    }
  };
  put(model.system.M);
  put(model.system.C);
  put(model.system.K);
  put(model.system.P.transpose());
  put(model.Lt);
  for (std::size_t i = 0; i < model.wheel_offsets.size(); ++i) {
    out << (i ? " " : "") << model.wheel_offsets[i];
  }
  out << '\n';
}

}  // namespace vtsi
