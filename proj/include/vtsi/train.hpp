#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "vtsi/types.hpp"

namespace vtsi {

/// Rigid-bar car on two suspensions (one per wheel).
struct CarSpec {
  double m_c = 0.0;   // carriage mass, kg
  double I_c = 0.0;   // carriage pitch inertia, kg m^2
  double m_w = 0.0;   // mass of each wheel, kg (0 allowed)
  double k_s = 0.0;   // stiffness of each suspension, N/m
  double c_s = 0.0;   // damping of each suspension, N s/m
  double l_c = 0.0;   // wheel-to-wheel distance, m
  double l_ct = 0.0;  // overall car length, m

  void validate() const;
  bool operator==(const CarSpec&) const = default;
};

/// Train subsystem. Wheels are numbered from the rear of the train:
/// wheel 0 is the last wheel and `wheel_offsets` grow towards the front.
/// Each row of `Lt` has a single -1 at its wheel DOF (displacements are
/// positive up, contact forces positive in compression).
struct TrainModel {
  SecondOrderSystem system;
  Mat Lt;
  std::vector<double> wheel_offsets;
  std::vector<int> carriage_dofs;
  std::vector<int> wheel_dofs;

  double overall_length = 0.0;

  int n_wheels() const { return static_cast<int>(Lt.rows()); }
  int n_dof() const { return static_cast<int>(system.size()); }
  /// Total dead load carried by the wheels (N), from the load vector.
  double weight() const { return -system.P.sum(); }
};

/// Four-DOF car: [heave, pitch, rear wheel, front wheel], pitch positive
/// nose-up.
TrainModel build_car(const CarSpec& spec);

/// Merge DOF `drop` into DOF `keep` (indices into the unmerged assembly).
struct DofMerge {
  int keep = 0;
  int drop = 0;

  bool operator==(const DofMerge&) const = default;
};

/// Block assembly of cars listed rear to front. `gaps[i]` is the distance
/// between the front wheel of car i and the rear wheel of car i+1; when
/// omitted it defaults to l_ct - l_c of car i.
TrainModel build_train(const std::vector<CarSpec>& cars,
                       const std::optional<std::vector<double>>& gaps = std::nullopt,
                       const std::vector<DofMerge>& shared_dofs = {});

/// Carriage/wheel blocks of the train matrices.
struct TrainPartition {
  Mat Mcc, Mcw, Mwc, Mww;
  Mat Ccc, Ccw, Cwc, Cww;
  Mat Kcc, Kcw, Kwc, Kww;
  Vec Pc, Pw;
};

TrainPartition partition(const TrainModel& model);

/// Inverse of partition(): scatters the blocks back into full matrices.
SecondOrderSystem reassemble(const TrainPartition& blocks, const TrainModel& layout);

/// Plain-text dense matrix exchange. Layout: optional '#' comment lines,
/// then "n_dof n_wheels", then M, C, K (n_dof rows each), P (one row), Lt
/// (n_wheels rows), wheel offsets (one row). Whitespace separated, row-major.
TrainModel read_train_matrices(const std::filesystem::path& path);
void write_train_matrices(const TrainModel& model, const std::filesystem::path& path);

}  // namespace vtsi
