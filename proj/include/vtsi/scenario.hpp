#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vtsi/bridge.hpp"
#include "vtsi/coupled_system.hpp"
#include "vtsi/irregularity.hpp"
#include "vtsi/trace.hpp"
#include "vtsi/train.hpp"

namespace vtsi {

enum class Scheme { bauchau, bathe, bdf1, bdf2, direct };

std::string to_string(Scheme s);
Scheme parse_scheme(const std::string& name);

struct TrainConfig {
  std::vector<CarSpec> cars;
  std::optional<std::vector<double>> gaps;
  std::vector<DofMerge> shared_dofs;
  std::string matrix_file;  // overrides `cars` when set

  bool operator==(const TrainConfig&) const = default;
};

struct IrregularityConfig {
  bool enabled = false;
  std::uint64_t seed = 1;
  double tolerance = 2.7e-3;
  PsdParams psd;
  std::string profile_file;  // tabulated x,rho; overrides the generator

  bool operator==(const IrregularityConfig&) const = default;
};

struct ScenarioConfig {
  std::string name;
  BridgeSpec bridge;
  bool rigid_bridge = false;
  double damping_ratio = 0.05;
  std::pair<int, int> damping_modes{1, 2};
  TrainConfig train;
  double speed = 0.0;           // m/s
  double front_position = 0.0;  // front wheel x at t = 0
  double dt = 1e-3;
  double t_end = 1.0;
  // When set, t_end = time the last wheel leaves the bridge + this margin.
  std::optional<double> t_end_after_exit;
  Scheme scheme = Scheme::bauchau;
  Interpolation interp = Interpolation::hermite;
  ContactMode contact = ContactMode::bilateral;
  IrregularityConfig irregularity;
  std::vector<double> probes;  // extra bridge positions; first-span midspan is always recorded
  std::string output;

  void validate() const;
  double effective_t_end() const;
  bool operator==(const ScenarioConfig&) const = default;
};

ScenarioConfig parse_config(const std::string& json_text);
ScenarioConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const ScenarioConfig& config);
/// FNV-1a 64 of the serialized config, as 16 hex digits.
std::string config_hash(const ScenarioConfig& config);

std::vector<std::string> case_names();
std::string case_description(const std::string& name);
ScenarioConfig builtin_case(const std::string& name);

BridgeModel build_bridge(const ScenarioConfig& config);
TrainModel build_train_model(const ScenarioConfig& config);
CoupledSystem build_system(const ScenarioConfig& config);
std::vector<double> probe_positions(const ScenarioConfig& config);

/// Static initialization, then the configured scheme up to t_end.
SimulationTrace run(const ScenarioConfig& config);

/// `<path>.meta.json` beside a CSV trace.
void write_metadata(const SimulationTrace& trace, const ScenarioConfig& config,
                    const std::filesystem::path& csv_path);

struct SweepRow {
  double speed = 0.0;
  double max_u = 0.0;  // max |u| at the first probe
  double max_a = 0.0;
  std::string error;   // nonempty if the run failed
};

/// Independent runs over `speeds` on a worker pool (threads <= 0: hardware).
std::vector<SweepRow> sweep_speed(const ScenarioConfig& config, const std::vector<double>& speeds,
                                  int threads = 0);

struct ConvergenceRow {
  std::string parameter;  // "N" or "dt"
  double value = 0.0;
  double max_force = 0.0;    // max contact force over wheels and time
  double max_midspan = 0.0;  // max |u| at the first-span midspan
  double max_wheel = 0.0;    // max |u| of wheel 1
  std::string error;
};

/// Rows for each N (elements per span, at config.dt) then each dt (at the
/// configured mesh).
std::vector<ConvergenceRow> convergence_study(const ScenarioConfig& config,
                                              const std::vector<int>& elements,
                                              const std::vector<double>& dts, int threads = 0);

/// Car-passing resonance estimate v = f * l_ct.
double resonance_speed(double bridge_frequency, double car_length);

}  // namespace vtsi
