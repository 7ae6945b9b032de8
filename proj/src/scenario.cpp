#include "vtsi/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "vtsi/bathe.hpp"
#include "vtsi/bauchau.hpp"
#include "vtsi/oracle.hpp"

namespace vtsi {

using nlohmann::json;

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::bauchau: return "bauchau";
    case Scheme::bathe: return "bathe";
    case Scheme::bdf1: return "oracle-bdf1";
    case Scheme::bdf2: return "oracle-bdf2";
    case Scheme::direct: return "oracle-direct";
  }
  return "?";
}

Scheme parse_scheme(const std::string& name) {
  if (name == "bauchau") return Scheme::bauchau;
  if (name == "bathe") return Scheme::bathe;
  if (name == "oracle-bdf1" || name == "bdf1") return Scheme::bdf1;
  if (name == "oracle-bdf2" || name == "bdf2") return Scheme::bdf2;
  if (name == "oracle-direct" || name == "direct") return Scheme::direct;
  throw std::invalid_argument("unknown scheme '" + name + "'");
}

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  if (!j.is_object()) throw std::invalid_argument("config: '" + where + "' must be an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) {
      throw std::invalid_argument("config: unknown key '" + it.key() + "' in " + where);
    }
  }
}

template <class T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

json car_to_json(const CarSpec& c) {
  return {{"m_c", c.m_c}, {"I_c", c.I_c}, {"m_w", c.m_w}, {"k_s", c.k_s},
          {"c_s", c.c_s}, {"l_c", c.l_c}, {"l_ct", c.l_ct}};
}

CarSpec car_from_json(const json& j) {
  reject_unknown(j, {"m_c", "I_c", "m_w", "k_s", "c_s", "l_c", "l_ct"}, "train.cars[]");
  CarSpec c;
  read(j, "m_c", c.m_c);
  read(j, "I_c", c.I_c);
  read(j, "m_w", c.m_w);
  read(j, "k_s", c.k_s);
  read(j, "c_s", c.c_s);
  read(j, "l_c", c.l_c);
  read(j, "l_ct", c.l_ct);
  return c;
}

json psd_to_json(const PsdParams& p) {
  return {{"A", p.A},       {"omega_r", p.omega_r}, {"omega_c", p.omega_c},
          {"omega_l", p.omega_l}, {"omega_u", p.omega_u}, {"N", p.N}};
}

PsdParams psd_from_json(const json& j) {
  reject_unknown(j, {"A", "omega_r", "omega_c", "omega_l", "omega_u", "N"}, "irregularity.psd");
  PsdParams p;
  read(j, "A", p.A);
  read(j, "omega_r", p.omega_r);
  read(j, "omega_c", p.omega_c);
  read(j, "omega_l", p.omega_l);
  read(j, "omega_u", p.omega_u);
  read(j, "N", p.N);
  return p;
}

json to_json(const ScenarioConfig& c) {
  json spans = json::array();
  for (const auto& s : c.bridge.spans) spans.push_back({{"length", s.length}, {"elements", s.elements}});
  json bridge = {{"spans", spans},
                 {"E", c.bridge.E},
                 {"I", c.bridge.I},
                 {"mu", c.bridge.mu},
                 {"ends", c.bridge.ends == EndCondition::fixed ? "fixed" : "simply_supported"},
                 {"approach_elements", c.bridge.approach_elements},
                 {"self_weight", c.bridge.self_weight},
                 {"rigid", c.rigid_bridge},
                 {"damping_ratio", c.damping_ratio},
                 {"damping_modes", {c.damping_modes.first, c.damping_modes.second}}};
  json cars = json::array();
  for (const auto& car : c.train.cars) cars.push_back(car_to_json(car));
  json shared = json::array();
  for (const auto& m : c.train.shared_dofs) shared.push_back({m.keep, m.drop});
  json train = {{"cars", cars}, {"shared_dofs", shared}, {"matrix_file", c.train.matrix_file}};
  train["gaps"] = c.train.gaps ? json(*c.train.gaps) : json(nullptr);
  json irr = {{"enabled", c.irregularity.enabled},
              {"seed", c.irregularity.seed},
              {"tolerance", c.irregularity.tolerance},
              {"psd", psd_to_json(c.irregularity.psd)},
              {"profile_file", c.irregularity.profile_file}};
  json out = {{"name", c.name},
              {"bridge", bridge},
              {"train", train},
              {"speed", c.speed},
              {"front_position", c.front_position},
              {"dt", c.dt},
              {"t_end", c.t_end},
              {"scheme", to_string(c.scheme)},
              {"constraint_interp", c.interp == Interpolation::hermite ? "hermite" : "bspline"},
              {"contact_mode", c.contact == ContactMode::bilateral ? "bilateral" : "lcp"},
              {"irregularity", irr},
              {"probes", c.probes},
              {"output", c.output}};
  out["t_end_after_exit"] = c.t_end_after_exit ? json(*c.t_end_after_exit) : json(nullptr);
  return out;
}

ScenarioConfig from_json(const json& j) {
  reject_unknown(j, {"name", "bridge", "train", "speed", "front_position", "dt", "t_end",
                     "t_end_after_exit", "scheme", "constraint_interp", "contact_mode",
                     "irregularity", "probes", "output"},
                 "config");
  ScenarioConfig c;
  read(j, "name", c.name);
  if (j.contains("bridge")) {
    const json& b = j.at("bridge");
    reject_unknown(b, {"spans", "E", "I", "mu", "ends", "approach_elements", "self_weight", "rigid",
                       "damping_ratio", "damping_modes"},
                   "bridge");
    if (b.contains("spans")) {
      for (const auto& s : b.at("spans")) {
        reject_unknown(s, {"length", "elements"}, "bridge.spans[]");
        SpanSpec span;
        read(s, "length", span.length);
        read(s, "elements", span.elements);
        c.bridge.spans.push_back(span);
      }
    }
    read(b, "E", c.bridge.E);
    read(b, "I", c.bridge.I);
    read(b, "mu", c.bridge.mu);
    if (b.contains("ends")) {
      const auto ends = b.at("ends").get<std::string>();
      if (ends == "fixed") c.bridge.ends = EndCondition::fixed;
      else if (ends == "simply_supported") c.bridge.ends = EndCondition::simply_supported;
      else throw std::invalid_argument("config: bridge.ends must be fixed or simply_supported");
    }
    read(b, "approach_elements", c.bridge.approach_elements);
    read(b, "self_weight", c.bridge.self_weight);
    read(b, "rigid", c.rigid_bridge);
    read(b, "damping_ratio", c.damping_ratio);
    if (b.contains("damping_modes")) {
      const auto m = b.at("damping_modes").get<std::vector<int>>();
      if (m.size() != 2) throw std::invalid_argument("config: damping_modes needs two entries");
      c.damping_modes = {m[0], m[1]};
    }
  }
  if (j.contains("train")) {
    const json& t = j.at("train");
    reject_unknown(t, {"cars", "gaps", "shared_dofs", "matrix_file"}, "train");
    if (t.contains("cars")) {
      for (const auto& car : t.at("cars")) c.train.cars.push_back(car_from_json(car));
    }
    if (t.contains("gaps") && !t.at("gaps").is_null()) c.train.gaps = t.at("gaps").get<std::vector<double>>();
    if (t.contains("shared_dofs")) {
      for (const auto& m : t.at("shared_dofs")) {
        const auto pair = m.get<std::vector<int>>();
        if (pair.size() != 2) throw std::invalid_argument("config: shared_dofs entries are [keep, drop]");
        c.train.shared_dofs.push_back({pair[0], pair[1]});
      }
    }
    read(t, "matrix_file", c.train.matrix_file);
  }
  read(j, "speed", c.speed);
  read(j, "front_position", c.front_position);
  read(j, "dt", c.dt);
  read(j, "t_end", c.t_end);
  if (j.contains("t_end_after_exit") && !j.at("t_end_after_exit").is_null()) {
    c.t_end_after_exit = j.at("t_end_after_exit").get<double>();
  }
  if (j.contains("scheme")) c.scheme = parse_scheme(j.at("scheme").get<std::string>());
  if (j.contains("constraint_interp")) {
    const auto s = j.at("constraint_interp").get<std::string>();
    if (s == "hermite") c.interp = Interpolation::hermite;
    else if (s == "bspline") c.interp = Interpolation::bspline;
    else throw std::invalid_argument("config: constraint_interp must be hermite or bspline");
  }
  if (j.contains("contact_mode")) {
    const auto s = j.at("contact_mode").get<std::string>();
    if (s == "bilateral") c.contact = ContactMode::bilateral;
    else if (s == "lcp") c.contact = ContactMode::lcp;
    else throw std::invalid_argument("config: contact_mode must be bilateral or lcp");
  }
  if (j.contains("irregularity")) {
    const json& r = j.at("irregularity");
    reject_unknown(r, {"enabled", "seed", "tolerance", "psd", "profile_file"}, "irregularity");
    read(r, "enabled", c.irregularity.enabled);
    read(r, "seed", c.irregularity.seed);
    read(r, "tolerance", c.irregularity.tolerance);
    if (r.contains("psd")) c.irregularity.psd = psd_from_json(r.at("psd"));
    read(r, "profile_file", c.irregularity.profile_file);
  }
  read(j, "probes", c.probes);
  read(j, "output", c.output);
  return c;
}

CarSpec reference_car(double m_w) {
  return {.m_c = 60000.0, .I_c = 1.125e6, .m_w = m_w, .k_s = 5e6, .c_s = 27e3, .l_c = 15.0, .l_ct = 20.0};
}

ScenarioConfig two_span_case(const std::string& name, EndCondition ends, double m_w) {
  ScenarioConfig c;
  c.name = name;
  c.bridge.spans = {{30.0, 100}, {30.0, 100}};
  c.bridge.E = 29e9;
  c.bridge.I = 8.65;
  c.bridge.mu = 36000.0;
  c.bridge.ends = ends;
  c.bridge.approach_elements = ends == EndCondition::fixed ? 3 : 0;
  c.train.cars = {reference_car(m_w)};
  c.speed = 110.0;
  c.dt = 1e-3;
  c.t_end = 0.8;
  c.scheme = Scheme::bauchau;
  return c;
}

struct CaseEntry {
  const char* name;
  const char* description;
};

constexpr CaseEntry kCases[] = {
    {"case1", "two 30 m spans, fixed ends, one car, m_w = 0, Bauchau"},
    {"case2", "two 30 m spans, fixed ends, one car, m_w = 1000 kg, Bauchau"},
    {"case3", "two 30 m spans, simply supported, one car, m_w = 0, Bauchau"},
    {"case4", "two 30 m spans, simply supported, one car, m_w = 1000 kg, Bauchau"},
    {"case5", "single 30 m simply supported span, ten cars, Bathe, resonance sweep base"},
    {"case6", "two 25 m spans, fixed ends, two cars, Bathe with unilateral contact"},
    {"case6-irregular", "case6 with a class 6 elevation irregularity profile"},
};

double exit_time(const ScenarioConfig& c, const TrainModel& train, const BridgeModel& bridge) {
  if (!(c.speed > 0.0)) throw std::invalid_argument("config: t_end_after_exit needs a positive speed");
  const double length = train.wheel_offsets.empty()
                            ? 0.0
                            : train.wheel_offsets.back() - train.wheel_offsets.front();
  const double rear0 = c.front_position - length;
  return (bridge.x_end - rear0) / c.speed;
}

void run_pool(std::size_t count, int threads, const std::function<void(std::size_t)>& job) {
  unsigned n = threads > 0 ? static_cast<unsigned>(threads) : std::thread::hardware_concurrency();
  n = std::max(1u, std::min<unsigned>(n, static_cast<unsigned>(count)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) job(i);
  };
  if (n == 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < n; ++k) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace

void ScenarioConfig::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("config: dt must be positive");
  if (!t_end_after_exit && !(t_end > 0.0)) throw std::invalid_argument("config: t_end must be positive");
  if (!rigid_bridge && bridge.spans.empty()) throw std::invalid_argument("config: bridge has no spans");
  if (train.cars.empty() && train.matrix_file.empty()) {
    throw std::invalid_argument("config: train has no cars");
  }
  if (interp == Interpolation::bspline && bridge.ends != EndCondition::fixed) {
    throw std::invalid_argument("config: bspline interpolation requires fixed bridge ends");
  }
  if (contact == ContactMode::lcp && scheme != Scheme::bathe) {
    throw std::invalid_argument("config: lcp contact is only available with the bathe scheme");
  }
  if (scheme == Scheme::direct) {
    if (interp != Interpolation::hermite) {
      throw std::invalid_argument("config: oracle-direct requires hermite interpolation");
    }
    if (irregularity.enabled) throw std::invalid_argument("config: oracle-direct requires no irregularity");
  }
  if (damping_ratio < 0.0) throw std::invalid_argument("config: negative damping ratio");
}

double ScenarioConfig::effective_t_end() const {
  if (!t_end_after_exit) return t_end;
  return exit_time(*this, build_train_model(*this), build_bridge(*this)) + *t_end_after_exit;
}

ScenarioConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  try {
    return from_json(j);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const ScenarioConfig& config) { return to_json(config).dump(2); }

std::string config_hash(const ScenarioConfig& config) {
  const std::string s = to_json(config).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<std::string> case_names() {
  std::vector<std::string> names;
  for (const auto& c : kCases) names.emplace_back(c.name);
  return names;
}

std::string case_description(const std::string& name) {
  for (const auto& c : kCases) {
    if (name == c.name) return c.description;
  }
  throw std::invalid_argument("unknown case '" + name + "'");
}

ScenarioConfig builtin_case(const std::string& name) {
  if (name == "case1") return two_span_case(name, EndCondition::fixed, 0.0);
  if (name == "case2") return two_span_case(name, EndCondition::fixed, 1000.0);
  if (name == "case3") return two_span_case(name, EndCondition::simply_supported, 0.0);
  if (name == "case4") return two_span_case(name, EndCondition::simply_supported, 1000.0);
  if (name == "case5") {
    ScenarioConfig c;
    c.name = name;
    c.bridge.spans = {{30.0, 50}};
    c.bridge.E = 29e9;
    c.bridge.I = 8.65;
    c.bridge.mu = 36000.0;
    c.bridge.ends = EndCondition::simply_supported;
    c.train.cars.assign(10, reference_car(1000.0));
    c.speed = 94.0;
    c.dt = 2e-3;
    c.t_end_after_exit = 0.1;
    c.scheme = Scheme::bathe;
    return c;
  }
  if (name == "case6" || name == "case6-irregular") {
    ScenarioConfig c;
    c.name = name;
    c.bridge.spans = {{25.0, 100}, {25.0, 100}};
    c.bridge.E = 22e9;
    c.bridge.I = 4.0;
    c.bridge.mu = 38000.0;
    c.bridge.ends = EndCondition::fixed;
    c.bridge.approach_elements = 3;
    const double m_c = 1e5, k_s = 5e7;
    const CarSpec car{.m_c = m_c, .I_c = 506670.0, .m_w = 1000.0, .k_s = k_s,
                      .c_s = 0.05 * 2.0 * std::sqrt(k_s * m_c / 2.0), .l_c = 6.0, .l_ct = 9.0};
    c.train.cars = {car, car};
    c.train.gaps = std::vector<double>{3.0};
    c.speed = 110.0;
    c.dt = 1e-3;
    c.t_end = 0.8;
    c.scheme = Scheme::bathe;
    c.contact = ContactMode::lcp;
    if (name == "case6-irregular") {
      c.irregularity.enabled = true;
      c.irregularity.seed = 1;
    }
    return c;
  }
  throw std::invalid_argument("unknown case '" + name + "'");
}

BridgeModel build_bridge(const ScenarioConfig& c) {
  if (c.rigid_bridge) {
    double length = 0.0;
    for (const auto& s : c.bridge.spans) length += s.length;
    return vtsi::rigid_bridge(0.0, length > 0.0 ? length : 1.0);
  }
  BridgeModel model = assemble_bridge(c.bridge);
  if (c.damping_ratio > 0.0) model = rayleigh_damping(std::move(model), c.damping_ratio, c.damping_modes);
  return model;
}

TrainModel build_train_model(const ScenarioConfig& c) {
  if (!c.train.matrix_file.empty()) return read_train_matrices(c.train.matrix_file);
  return build_train(c.train.cars, c.train.gaps, c.train.shared_dofs);
}

CoupledSystem build_system(const ScenarioConfig& c) {
  c.validate();
  BridgeModel bridge = build_bridge(c);
  TrainModel train = build_train_model(c);
  std::optional<IrregularityProfile> profile;
  if (c.irregularity.enabled) {
    if (!c.irregularity.profile_file.empty()) {
      profile = read_profile_csv(c.irregularity.profile_file);
    } else {
      GenerateOptions opt;
      opt.tolerance = c.irregularity.tolerance;
      opt.x_from = bridge.x_start;
      opt.x_to = bridge.x_end;
      opt.zero_before = bridge.x_start;
      opt.zero_after = bridge.x_end;
      profile = generate_irregularity(c.irregularity.seed, c.irregularity.psd, opt);
    }
  }
  return CoupledSystem(std::move(bridge), std::move(train), c.speed, c.front_position, c.interp,
                       std::move(profile));
}

std::vector<double> probe_positions(const ScenarioConfig& c) {
  std::vector<double> x;
  const double first = c.bridge.spans.empty() ? 0.5 : c.bridge.spans.front().length;
  x.push_back(first / 2.0);
  for (double p : c.probes) {
    if (std::find(x.begin(), x.end(), p) == x.end()) x.push_back(p);
  }
  return x;
}

SimulationTrace run(const ScenarioConfig& config) {
  const CoupledSystem sys = build_system(config);
  const double t_end = config.t_end_after_exit
                           ? exit_time(config, sys.train(), sys.bridge()) + *config.t_end_after_exit
                           : config.t_end;
  const long steps = std::lround(std::ceil(t_end / config.dt - 1e-9));
  const double shift = config.scheme == Scheme::bauchau ? -config.dt / 2.0 : 0.0;
  TraceRecorder rec(sys, probe_positions(config), to_string(config.scheme), config.dt, shift);

  State s = static_init(sys, 0.0);
  long k = 0;
  try {
    switch (config.scheme) {
      case Scheme::bauchau: {
        const BauchauIntegrator integ(sys, config.dt);
        rec.record(s);
        for (k = 1; k <= steps; ++k) {
          s = integ.step(s);
          rec.record(s);
        }
        break;
      }
      case Scheme::bathe: {
        const BatheIntegrator integ(sys, config.dt, config.contact);
        rec.record(s);
        for (k = 1; k <= steps; ++k) {
          s = integ.step(s);
          rec.record(s);
        }
        break;
      }
      case Scheme::bdf1:
      case Scheme::bdf2: {
        const BdfIntegrator integ(sys, config.dt, config.scheme == Scheme::bdf1 ? 1 : 2);
        rec.record(s);
        State prev;
        bool have_prev = false;
        for (k = 1; k <= steps; ++k) {
          State next = integ.step(s, have_prev ? &prev : nullptr);
          prev = std::move(s);
          have_prev = true;
          s = std::move(next);
          rec.record(s);
        }
        break;
      }
      case Scheme::direct: {
        const DirectCoupledIntegrator integ(sys, config.dt);
        s = integ.initial(s);
        rec.record(s);
        for (k = 1; k <= steps; ++k) {
          s = integ.step(s);
          rec.record(s);
        }
        break;
      }
    }
  } catch (const SolverError& e) {
    throw SolverError(std::string(e.what()) + " (step " + std::to_string(k) + ")");
  }

  SimulationTrace trace = rec.finish();
  trace.metadata["scheme"] = to_string(config.scheme);
  trace.metadata["case"] = config.name;
  trace.metadata["config_hash"] = config_hash(config);
  trace.metadata["dt"] = std::to_string(config.dt);
  trace.metadata["t_end"] = std::to_string(t_end);
  trace.metadata["constraint_interp"] = config.interp == Interpolation::hermite ? "hermite" : "bspline";
  trace.metadata["contact_mode"] = config.contact == ContactMode::bilateral ? "bilateral" : "lcp";
  trace.metadata["lambda_shift"] = std::to_string(shift);
  return trace;
}

void write_metadata(const SimulationTrace& trace, const ScenarioConfig& config,
                    const std::filesystem::path& csv_path) {
  json meta = trace.metadata;
  meta["config"] = to_json(config);
  meta["steps"] = trace.steps();
  meta["wheels"] = trace.n_wheels();
  std::ofstream out(csv_path.string() + ".meta.json");
  if (!out) throw std::invalid_argument("write_metadata: cannot open output");
  out << meta.dump(2) << '\n';
}

std::vector<SweepRow> sweep_speed(const ScenarioConfig& config, const std::vector<double>& speeds,
                                  int threads) {
  if (speeds.empty()) throw std::invalid_argument("sweep_speed: no speeds");
  std::vector<SweepRow> rows(speeds.size());
  run_pool(speeds.size(), threads, [&](std::size_t i) {
    ScenarioConfig c = config;
    c.speed = speeds[i];
    rows[i].speed = speeds[i];
    try {
      const SimulationTrace t = run(c);
      rows[i].max_u = t.probe_u.col(0).cwiseAbs().maxCoeff();
      rows[i].max_a = t.probe_a.col(0).cwiseAbs().maxCoeff();
    } catch (const std::exception& e) {
      rows[i].error = e.what();
    }
  });
  return rows;
}

std::vector<ConvergenceRow> convergence_study(const ScenarioConfig& config,
                                              const std::vector<int>& elements,
                                              const std::vector<double>& dts, int threads) {
  if (elements.empty() && dts.empty()) throw std::invalid_argument("convergence_study: empty lists");
  std::vector<ConvergenceRow> rows;
  std::vector<ScenarioConfig> configs;
  for (int n : elements) {
    ScenarioConfig c = config;
    for (auto& s : c.bridge.spans) s.elements = n;
    configs.push_back(c);
    ConvergenceRow row;
    row.parameter = "N";
    row.value = n;
    rows.push_back(row);
  }
  for (double dt : dts) {
    ScenarioConfig c = config;
    c.dt = dt;
    configs.push_back(c);
    ConvergenceRow row;
    row.parameter = "dt";
    row.value = dt;
    rows.push_back(row);
  }
  run_pool(configs.size(), threads, [&](std::size_t i) {
    try {
      const SimulationTrace t = run(configs[i]);
      const TrainModel train = build_train_model(configs[i]);
      rows[i].max_force = t.lambda.size() ? t.lambda.maxCoeff() : 0.0;
      rows[i].max_midspan = t.probe_u.col(0).cwiseAbs().maxCoeff();
      int wheel = -1;
      for (Index j = 0; j < train.Lt.cols() && train.n_wheels() > 0; ++j) {
        if (train.Lt(0, j) != 0.0) wheel = static_cast<int>(j);
      }
      rows[i].max_wheel = wheel >= 0 ? t.train_u.col(wheel).cwiseAbs().maxCoeff() : 0.0;
    } catch (const std::exception& e) {
      rows[i].error = e.what();
    }
  });
  return rows;
}

double resonance_speed(double bridge_frequency, double car_length) {
  return bridge_frequency * car_length;
}

}  // namespace vtsi
