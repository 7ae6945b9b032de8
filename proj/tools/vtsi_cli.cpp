// Command-line front end: run, sweep, converge, cases list.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vtsi/scenario.hpp"

namespace {

struct Common {
  std::string case_name;
  std::string config_file;
  std::string scheme;
  std::optional<double> dt;
  std::optional<int> elements;
  std::optional<double> speed;
  std::optional<std::uint64_t> seed;
  std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--case", c.case_name, "Builtin case name (see 'cases list')");
  cmd->add_option("--config", c.config_file, "JSON scenario file");
  cmd->add_option("--scheme", c.scheme, "bauchau | bathe | oracle-bdf1 | oracle-bdf2 | oracle-direct");
  cmd->add_option("--dt", c.dt, "Time step (s)");
  cmd->add_option("--elements", c.elements, "Elements per span");
  cmd->add_option("--speed", c.speed, "Train speed (m/s)");
  cmd->add_option("--seed", c.seed, "Irregularity seed (enables the generated profile)");
  cmd->add_option("--out", c.out, "Output CSV path");
}

vtsi::ScenarioConfig resolve(const Common& c) {
  if (c.case_name.empty() == c.config_file.empty()) {
    throw std::invalid_argument("give exactly one of --case or --config");
  }
  vtsi::ScenarioConfig cfg = c.config_file.empty() ? vtsi::builtin_case(c.case_name)
                                                   : vtsi::load_config(c.config_file);
  if (!c.scheme.empty()) cfg.scheme = vtsi::parse_scheme(c.scheme);
  if (c.dt) cfg.dt = *c.dt;
  if (c.elements) {
    for (auto& s : cfg.bridge.spans) s.elements = *c.elements;
  }
  if (c.speed) cfg.speed = *c.speed;
  if (c.seed) {
    cfg.irregularity.enabled = true;
    cfg.irregularity.seed = *c.seed;
  }
  if (!c.out.empty()) cfg.output = c.out;
  return cfg;
}

std::FILE* open_out(const std::string& path) {
  if (path.empty()) return stdout;
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::invalid_argument("cannot open " + path);
  return f;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> v;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto comma = text.find(',', pos);
    v.push_back(std::stod(text.substr(pos, comma - pos)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Train-bridge interaction simulator"};
  app.require_subcommand(1);

  Common run_opts;
  std::vector<std::string> compare;
  auto* run = app.add_subcommand("run", "Run one scenario and write its trace");
  add_common(run, run_opts);
  run->add_option("--compare", compare, "Run two schemes and print relative L-inf deltas")
      ->expected(2);

  Common sweep_opts;
  double v_from = 10.0, v_to = 150.0, v_step = 2.0;
  int threads = 0;
  auto* sweep = app.add_subcommand("sweep", "Peak midspan response against speed");
  add_common(sweep, sweep_opts);
  sweep->add_option("--from", v_from, "First speed (m/s)");
  sweep->add_option("--to", v_to, "Last speed (m/s)");
  sweep->add_option("--step", v_step, "Speed increment (m/s)");
  sweep->add_option("--threads", threads, "Worker threads (0: all cores)");

  Common conv_opts;
  std::string n_list = "2,4,10,20,40,100", dt_list = "0.01,0.005,0.002,0.001";
  auto* conv = app.add_subcommand("converge", "Mesh and time-step refinement table");
  add_common(conv, conv_opts);
  conv->add_option("--n-list", n_list, "Comma-separated elements per span");
  conv->add_option("--dt-list", dt_list, "Comma-separated time steps");
  conv->add_option("--threads", threads, "Worker threads (0: all cores)");

  auto* cases = app.add_subcommand("cases", "Builtin case catalog");
  auto* list = cases->add_subcommand("list", "List builtin cases");
  cases->require_subcommand(1);

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      for (const auto& name : vtsi::case_names()) {
        std::printf("%-16s %s\n", name.c_str(), vtsi::case_description(name).c_str());
      }
      return 0;
    }
    if (run->parsed()) {
      vtsi::ScenarioConfig cfg = resolve(run_opts);
      if (!compare.empty()) {
        cfg.scheme = vtsi::parse_scheme(compare[0]);
        const auto a = vtsi::run(cfg);
        cfg.scheme = vtsi::parse_scheme(compare[1]);
        if (cfg.scheme != vtsi::Scheme::bathe) cfg.contact = vtsi::ContactMode::bilateral;
        const auto b = vtsi::run(cfg);
        const auto cmp = vtsi::compare_traces(a, b);
        std::printf("column,relative_linf\n");
        for (std::size_t i = 0; i < cmp.names.size(); ++i) {
          std::printf("%s,%.6g\n", cmp.names[i].c_str(), cmp.relative_linf[i]);
        }
        return 0;
      }
      const auto trace = vtsi::run(cfg);
      const std::string out = cfg.output.empty() ? cfg.name + ".csv" : cfg.output;
      vtsi::write_trace_csv(trace, out);
      vtsi::write_metadata(trace, cfg, out);
      std::fprintf(stderr, "wrote %s (%ld rows)\n", out.c_str(), static_cast<long>(trace.steps()));
      return 0;
    }
    if (sweep->parsed()) {
      const vtsi::ScenarioConfig cfg = resolve(sweep_opts);
      if (!(v_step > 0.0) || v_to < v_from) throw std::invalid_argument("bad speed range");
      std::vector<double> speeds;
      for (int i = 0; v_from + i * v_step <= v_to + 1e-9; ++i) speeds.push_back(v_from + i * v_step);
      const auto rows = vtsi::sweep_speed(cfg, speeds, threads);
      std::FILE* f = open_out(sweep_opts.out);
      std::fprintf(f, "speed,max_u,max_a,error\n");
      int failed = 0;
      for (const auto& r : rows) {
        std::fprintf(f, "%.15g,%.15g,%.15g,%s\n", r.speed, r.max_u, r.max_a, r.error.c_str());
        failed += !r.error.empty();
      }
      if (f != stdout) std::fclose(f);
      return failed ? 2 : 0;
    }
    if (conv->parsed()) {
      const vtsi::ScenarioConfig cfg = resolve(conv_opts);
      std::vector<int> ns;
      for (double n : parse_list(n_list)) ns.push_back(static_cast<int>(n));
      const auto rows = vtsi::convergence_study(cfg, ns, parse_list(dt_list), threads);
      std::FILE* f = open_out(conv_opts.out);
      std::fprintf(f, "parameter,value,max_force,max_midspan_u,max_wheel1_u,error\n");
      int failed = 0;
      for (const auto& r : rows) {
        std::fprintf(f, "%s,%.15g,%.15g,%.15g,%.15g,%s\n", r.parameter.c_str(), r.value, r.max_force,
                     r.max_midspan, r.max_wheel, r.error.c_str());
        failed += !r.error.empty();
      }
      if (f != stdout) std::fclose(f);
      return failed ? 2 : 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
