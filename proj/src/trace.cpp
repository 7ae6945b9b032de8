#include "vtsi/trace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace vtsi {

namespace {

std::string format_x(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

Mat stack(const std::vector<Vec>& rows, Index cols) {
  Mat m(static_cast<Index>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Index>(i)) = rows[i].transpose();
  return m;
}

}  // namespace

std::vector<std::string> SimulationTrace::header() const {
  std::vector<std::string> h{"t"};
  for (const auto& p : probe_labels) h.push_back("u@" + p);
  for (const auto& p : probe_labels) h.push_back("v@" + p);
  for (const auto& p : probe_labels) h.push_back("a@" + p);
  for (const auto& l : train_labels) h.push_back(l);
  for (Index i = 0; i < lambda.cols(); ++i) h.push_back("lambda_" + std::to_string(i + 1));
  return h;
}

Vec SimulationTrace::column(const std::string& name) const {
  if (name == "t") return Eigen::Map<const Vec>(t.data(), static_cast<Index>(t.size()));
  for (std::size_t p = 0; p < probe_labels.size(); ++p) {
    if (name == "u@" + probe_labels[p]) return probe_u.col(p);
    if (name == "v@" + probe_labels[p]) return probe_v.col(p);
    if (name == "a@" + probe_labels[p]) return probe_a.col(p);
  }
  for (std::size_t j = 0; j < train_labels.size(); ++j) {
    if (name == train_labels[j]) return train_u.col(j);
  }
  for (Index i = 0; i < lambda.cols(); ++i) {
    if (name == "lambda_" + std::to_string(i + 1)) return lambda.col(i);
  }
  throw std::invalid_argument("SimulationTrace: no column '" + name + "'");
}

TraceRecorder::TraceRecorder(const CoupledSystem& system, std::vector<double> probe_x,
                             std::string scheme, double dt, double lambda_shift)
    : sys_(system) {
  trace_.scheme = std::move(scheme);
  trace_.dt = dt;
  trace_.lambda_shift = lambda_shift;
  trace_.probe_x = std::move(probe_x);
  for (double x : trace_.probe_x) {
    trace_.probe_labels.push_back(format_x(x));
    rows_.push_back(assemble_Lb(system.bridge(), {x}, 0));
  }
  trace_.train_labels = system.train().system.labels;
  if (trace_.train_labels.size() != static_cast<std::size_t>(system.n_train())) {
    trace_.train_labels.clear();
    for (int j = 0; j < system.n_train(); ++j) trace_.train_labels.push_back("dof" + std::to_string(j + 1));
  }
}

void TraceRecorder::record(const State& s) {
  const Index np = static_cast<Index>(rows_.size());
  Vec u(np), v(np), a(np);
  for (Index p = 0; p < np; ++p) {
    u(p) = (rows_[p] * s.ub)(0);
    v(p) = (rows_[p] * s.vb)(0);
    a(p) = (rows_[p] * s.ab)(0);
  }
  trace_.t.push_back(s.t);
  pu_.push_back(u);
  pv_.push_back(v);
  pa_.push_back(a);
  tu_.push_back(s.ut);
  lam_.push_back(s.lambda);
  lamh_.push_back(s.lambda_half.size() == s.lambda.size() ? s.lambda_half : s.lambda);
  trace_.constraint_residual.push_back(s.constraint_residual);
  trace_.penetration.push_back(s.penetration);
  trace_.complementarity.push_back(s.complementarity_residual);
}

SimulationTrace TraceRecorder::finish() {
  const Index np = static_cast<Index>(rows_.size());
  trace_.probe_u = stack(pu_, np);
  trace_.probe_v = stack(pv_, np);
  trace_.probe_a = stack(pa_, np);
  trace_.train_u = stack(tu_, sys_.n_train());
  trace_.lambda = stack(lam_, sys_.n_wheels());
  trace_.lambda_half = stack(lamh_, sys_.n_wheels());
  return std::move(trace_);
}

void write_trace_csv(const SimulationTrace& trace, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("write_trace_csv: cannot open " + path.string());
  const auto h = trace.header();
  for (std::size_t i = 0; i < h.size(); ++i) out << (i ? "," : "") << h[i];
  out << '\n';
  char buf[32];
  auto put = [&](double x) {
    std::snprintf(buf, sizeof buf, ",%.15g", x);
    out << buf;
  };
  for (Index k = 0; k < trace.steps(); ++k) {
    std::snprintf(buf, sizeof buf, "%.15g", trace.t[k]);
    out << buf;
    for (const Mat* m : {&trace.probe_u, &trace.probe_v, &trace.probe_a, &trace.train_u, &trace.lambda}) {
      for (Index j = 0; j < m->cols(); ++j) put((*m)(k, j));
    }
    out << '\n';
  }
}

double relative_linf(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("relative_linf: size mismatch");
  if (a.size() == 0) return 0.0;
  const double diff = (a - b).cwiseAbs().maxCoeff();
  const double ref = b.cwiseAbs().maxCoeff();
  if (ref == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return diff / ref;
}

Vec resample(const Vec& values, double t0, double dt, const std::vector<double>& t) {
  const Index n = values.size();
  Vec out(static_cast<Index>(t.size()));
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double s = (t[i] - t0) / dt;
    Index k = static_cast<Index>(std::floor(s));
    k = std::clamp<Index>(k, 0, std::max<Index>(n - 2, 0));
    if (n < 2) {
      out(i) = n == 1 ? values(0) : 0.0;
      continue;
    }
    const double w = std::clamp(s - k, 0.0, 1.0);
    out(i) = (1.0 - w) * values(k) + w * values(k + 1);
  }
  return out;
}

double oscillation_metric(const SimulationTrace& trace, const std::vector<bool>& exclude) {
  const Index n = trace.lambda.rows();
  double sum = 0.0;
  Index count = 0;
  for (Index k = 1; k + 1 < n; ++k) {
    if (!exclude.empty() && (exclude[k - 1] || exclude[k] || exclude[k + 1])) continue;
    for (Index j = 0; j < trace.lambda.cols(); ++j) {
      const double d = trace.lambda(k + 1, j) - 2.0 * trace.lambda(k, j) + trace.lambda(k - 1, j);
      sum += d * d;
      ++count;
    }
  }
  return count ? std::sqrt(sum / count) : 0.0;
}

TraceComparison compare_traces(const SimulationTrace& a, const SimulationTrace& b) {
  TraceComparison cmp;
  if (a.steps() < 2 || b.steps() < 1) return cmp;
  const double t0 = a.t.front();
  const double dt = a.t.size() > 1 ? a.t[1] - a.t[0] : 1.0;
  for (const auto& name : b.header()) {
    if (name == "t") continue;
    Vec ca;
    try {
      ca = a.column(name);
    } catch (const std::invalid_argument&) {
      continue;
    }
    const Vec cb = b.column(name);
    std::vector<double> when = b.t;
    if (name.rfind("lambda_", 0) == 0) {
      for (auto& x : when) x += b.lambda_shift - a.lambda_shift;
    }
    cmp.names.push_back(name);
    cmp.relative_linf.push_back(relative_linf(resample(ca, t0, dt, when), cb));
  }
  return cmp;
}

}  // namespace vtsi
