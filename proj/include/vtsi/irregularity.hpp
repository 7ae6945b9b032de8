#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <vector>

namespace vtsi {

struct PsdParams {
  double A = 1.5e-6;        // m^2 rad/m
  double omega_r = 0.0206;  // rad/m
  double omega_c = 0.825;   // rad/m
  double omega_l = 0.00383;
  double omega_u = 13.57383;
  int N = 3540;

  bool operator==(const PsdParams&) const = default;
};

/// One-sided elevation spectrum S(omega) = A wc^2 / ((w^2 + wr^2)(w^2 + wc^2)).
double psd(double omega, const PsdParams& params = {});

/// rho(x) = scale * gate(x) * sqrt(2) sum A_n cos(W_n x + phi_n), or a
/// tabulated profile (linear interpolation) when `table_x` is set.
/// gate is 0 before zero_before, ramps linearly to 1 over `ramp` metres,
/// and ramps back to 0 over the last `ramp` metres before zero_after.
struct IrregularityProfile {
  std::vector<double> amplitude;
  std::vector<double> omega;
  std::vector<double> phase;
  double scale = 1.0;
  double zero_before = -std::numeric_limits<double>::infinity();
  double zero_after = std::numeric_limits<double>::infinity();
  double ramp = 1.0;
  std::vector<double> table_x;
  std::vector<double> table_rho;

  double gate(double x) const;
  /// Ungated, unscaled cosine series.
  double raw(double x) const;
  double eval(double x) const;
  /// raw() at x0 + i dx, i < n, by phasor recurrence.
  std::vector<double> sample(double x0, double dx, int n) const;
  /// Upper bound of |rho'| from the term-wise sum.
  double slope_bound() const;
};

struct GenerateOptions {
  double tolerance = 2.7e-3;  // target max |rho| on the grid, m; <= 0 disables scaling
  double x_from = 0.0;        // normalization grid
  double x_to = 100.0;
  double grid = 0.01;
  double zero_before = 0.0;
  double zero_after = std::numeric_limits<double>::infinity();
  double ramp = 1.0;
};

/// Spectral-representation profile. Phase n is 2 pi u_n with u_n the n-th
/// draw of std::mt19937_64(seed), mapped to [0, 1) from its top 53 bits.
/// Amplitudes are computed for A = 1; `scale` carries sqrt(A) or the
/// normalization factor.
IrregularityProfile generate_irregularity(std::uint64_t seed, const PsdParams& params = {},
                                          const GenerateOptions& options = {});

/// CSV with header "x,rho".
void write_profile_csv(const IrregularityProfile& profile, const std::filesystem::path& path,
                       double x_from, double x_to, double dx);
IrregularityProfile read_profile_csv(const std::filesystem::path& path);

}  // namespace vtsi
