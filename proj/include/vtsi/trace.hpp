#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "vtsi/coupled_system.hpp"

namespace vtsi {

/// Uniformly sampled simulation output. Rows are time steps.
struct SimulationTrace {
  std::string scheme;
  double dt = 0.0;
  double lambda_shift = 0.0;  // lambda row k is sampled at t[k] + lambda_shift

  std::vector<double> t;
  std::vector<double> probe_x;
  std::vector<std::string> probe_labels;
  Mat probe_u, probe_v, probe_a;
  std::vector<std::string> train_labels;
  Mat train_u;
  Mat lambda;
  Mat lambda_half;  // Bathe first sub-step; equals lambda otherwise
  std::vector<double> constraint_residual;
  std::vector<double> penetration;
  std::vector<double> complementarity;
  std::map<std::string, std::string> metadata;

  Index steps() const { return static_cast<Index>(t.size()); }
  Index n_wheels() const { return lambda.cols(); }
  /// Column by CSV header name.
  Vec column(const std::string& name) const;
  std::vector<std::string> header() const;
};

/// Collects State snapshots into a trace.
class TraceRecorder {
 public:
  TraceRecorder(const CoupledSystem& system, std::vector<double> probe_x, std::string scheme,
                double dt, double lambda_shift = 0.0);
  void record(const State& s);
  SimulationTrace finish();

 private:
  const CoupledSystem& sys_;
  SimulationTrace trace_;
  std::vector<SparseRows> rows_;  // per probe: 1 x n_bridge
  std::vector<Vec> pu_, pv_, pa_, tu_, lam_, lamh_;
};

/// Writes "t,<probes>,<train dofs>,lambda_1..k" at 15 significant digits.
void write_trace_csv(const SimulationTrace& trace, const std::filesystem::path& path);

/// max |a - b| / max |b|; 0 when both vanish.
double relative_linf(const Vec& a, const Vec& b);

/// Linear interpolation of samples taken at t0 + k dt onto `t` (clamped).
Vec resample(const Vec& values, double t0, double dt, const std::vector<double>& t);

/// RMS of the second difference of each lambda column, pooled over wheels.
/// Rows whose three-point stencil touches `exclude` are skipped.
double oscillation_metric(const SimulationTrace& trace, const std::vector<bool>& exclude = {});

struct TraceComparison {
  std::vector<std::string> names;
  std::vector<double> relative_linf;
};

/// Per-column relative L-infinity deltas of `a` against `b` on b's grid.
/// Lambda columns are aligned through each trace's lambda_shift.
TraceComparison compare_traces(const SimulationTrace& a, const SimulationTrace& b);

}  // namespace vtsi
