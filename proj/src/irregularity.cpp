#include "vtsi/irregularity.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

namespace vtsi {

double psd(double omega, const PsdParams& p) {
  if (!(omega > 0.0)) throw std::invalid_argument("psd: omega must be positive");
  const double w2 = omega * omega;
  return p.A * p.omega_c * p.omega_c /
         ((w2 + p.omega_r * p.omega_r) * (w2 + p.omega_c * p.omega_c));
}

double IrregularityProfile::gate(double x) const {
  if (x <= zero_before || x >= zero_after) return 0.0;
  double g = 1.0;
  if (ramp > 0.0) {
    g = std::min(g, (x - zero_before) / ramp);
    g = std::min(g, (zero_after - x) / ramp);
  }
  return std::clamp(g, 0.0, 1.0);
}

double IrregularityProfile::raw(double x) const {
  if (!table_x.empty()) {
    if (x <= table_x.front()) return table_rho.front();
    if (x >= table_x.back()) return table_rho.back();
    const auto it = std::upper_bound(table_x.begin(), table_x.end(), x);
    const std::size_t j = it - table_x.begin();
    const double s = (x - table_x[j - 1]) / (table_x[j] - table_x[j - 1]);
    return (1.0 - s) * table_rho[j - 1] + s * table_rho[j];
  }
  double sum = 0.0;
  for (std::size_t n = 0; n < amplitude.size(); ++n) {
    sum += amplitude[n] * std::cos(omega[n] * x + phase[n]);
  }
  return std::numbers::sqrt2 * sum;
}

double IrregularityProfile::eval(double x) const {
  const double g = gate(x);
  return g == 0.0 ? 0.0 : scale * g * raw(x);
}

std::vector<double> IrregularityProfile::sample(double x0, double dx, int n) const {
  if (n < 0) throw std::invalid_argument("sample: negative count");
  std::vector<double> out(n, 0.0);
  if (!table_x.empty()) {
    for (int i = 0; i < n; ++i) out[i] = raw(x0 + i * dx);
    return out;
  }
  // Re-anchor periodically so rounding in the recurrence stays bounded.
  constexpr int kAnchor = 512;
  std::vector<std::complex<double>> z(amplitude.size()), step(amplitude.size());
  for (std::size_t k = 0; k < amplitude.size(); ++k) step[k] = std::polar(1.0, omega[k] * dx);
  for (int i = 0; i < n; ++i) {
    if (i % kAnchor == 0) {
      const double x = x0 + i * dx;
      for (std::size_t k = 0; k < amplitude.size(); ++k) {
        z[k] = std::polar(amplitude[k], omega[k] * x + phase[k]);
      }
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < amplitude.size(); ++k) {
      sum += z[k].real();
      z[k] *= step[k];
    }
    out[i] = std::numbers::sqrt2 * sum;
  }
  return out;
}

double IrregularityProfile::slope_bound() const {
  double sum = 0.0;
  for (std::size_t n = 0; n < amplitude.size(); ++n) sum += amplitude[n] * omega[n];
  return std::numbers::sqrt2 * sum * std::abs(scale);
}

IrregularityProfile generate_irregularity(std::uint64_t seed, const PsdParams& p,
                                          const GenerateOptions& opt) {
  if (p.N < 3) throw std::invalid_argument("generate_irregularity: N must be >= 3");
  if (!(p.omega_l > 0.0) || !(p.omega_u > p.omega_l)) {
    throw std::invalid_argument("generate_irregularity: degenerate frequency band");
  }
  if (opt.tolerance > 0.0 && (!(opt.grid > 0.0) || !(opt.x_to > opt.x_from))) {
    throw std::invalid_argument("generate_irregularity: bad normalization grid");
  }

  // Amplitudes for unit A; the level enters only through `scale`.
  IrregularityProfile prof;
  PsdParams shape = p;
  shape.A = 1.0;
  const double dw = (p.omega_u - p.omega_l) / p.N;
  const double s0 = 1.0 / (p.omega_r * p.omega_r);
  std::mt19937_64 rng(seed);
  for (int n = 1; n <= p.N - 1; ++n) {
    const double w = n * dw;
    double a_n = 0.0;
    if (n == 1) a_n = 4.0 / (6.0 * std::numbers::pi);
    if (n == 2) a_n = 1.0 / (6.0 * std::numbers::pi);
    prof.omega.push_back(w);
    prof.amplitude.push_back(std::sqrt((psd(w, shape) / std::numbers::pi + a_n * s0) * dw));
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    prof.phase.push_back(2.0 * std::numbers::pi * u);
  }
  prof.zero_before = opt.zero_before;
  prof.zero_after = opt.zero_after;
  prof.ramp = opt.ramp;
  prof.scale = std::sqrt(p.A);

  if (opt.tolerance > 0.0) {
    const int n = static_cast<int>(std::floor((opt.x_to - opt.x_from) / opt.grid + 1e-9)) + 1;
    const auto values = prof.sample(opt.x_from, opt.grid, n);
    double peak = 0.0;
    for (int i = 0; i < n; ++i) {
      peak = std::max(peak, std::abs(prof.gate(opt.x_from + i * opt.grid) * values[i]));
    }
    if (!(peak > 0.0)) throw std::invalid_argument("generate_irregularity: profile vanishes on grid");
    prof.scale = opt.tolerance / peak;
  }
  return prof;
}

void write_profile_csv(const IrregularityProfile& profile, const std::filesystem::path& path,
                       double x_from, double x_to, double dx) {
  if (!(dx > 0.0) || x_to < x_from) throw std::invalid_argument("write_profile_csv: bad grid");
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("write_profile_csv: cannot open " + path.string());
  out << "x,rho\n";
  const int n = static_cast<int>(std::floor((x_to - x_from) / dx + 1e-9)) + 1;
  char buf[64];
  for (int i = 0; i < n; ++i) {
    const double x = x_from + i * dx;
    std::snprintf(buf, sizeof buf, "%.15g,%.15g\n", x, profile.eval(x));
    out << buf;
  }
}

IrregularityProfile read_profile_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("read_profile_csv: cannot open " + path.string());
  IrregularityProfile prof;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (line_no == 1 && line.find_first_of("0123456789") != 0 && line[0] != '-') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double x = 0.0, r = 0.0;
    if (!(row >> x >> r)) {
      throw std::invalid_argument("read_profile_csv: bad line " + std::to_string(line_no));
    }
    if (!prof.table_x.empty() && !(x > prof.table_x.back())) {
      throw std::invalid_argument("read_profile_csv: x must be strictly increasing");
    }
    prof.table_x.push_back(x);
    prof.table_rho.push_back(r);
  }
  if (prof.table_x.size() < 2) throw std::invalid_argument("read_profile_csv: need >= 2 points");
  // The file holds final values; no extra gating.
  prof.ramp = 0.0;
  return prof;
}

}  // namespace vtsi
