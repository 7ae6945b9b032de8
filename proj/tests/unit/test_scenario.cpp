#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "vtsi/scenario.hpp"
#include "vtsi/trace.hpp"

using namespace vtsi;

namespace {

std::string first_line(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  return line;
}

}  // namespace

TEST_CASE("every built-in case survives a JSON round trip") {
  for (const auto& name : case_names()) {
    CAPTURE(name);
    const ScenarioConfig c = builtin_case(name);
    CHECK_NOTHROW(c.validate());
    CHECK_FALSE(case_description(name).empty());
    const ScenarioConfig back = parse_config(serialize_config(c));
    CHECK(back == c);
    CHECK(config_hash(back) == config_hash(c));
  }
  CHECK_THROWS(builtin_case("case9"));
}

TEST_CASE("config hash tracks content") {
  ScenarioConfig c = builtin_case("case1");
  const std::string h = config_hash(c);
  CHECK(h.size() == 16);
  c.speed += 1.0;
  CHECK(config_hash(c) != h);
}

TEST_CASE("unknown keys and invalid combinations are rejected") {
  const std::string text = serialize_config(builtin_case("case2"));
  std::string bad = text;
  bad.insert(bad.find('{') + 1, "\"colour\": 1,");
  CHECK_THROWS_AS(parse_config(bad), std::invalid_argument);
  std::string nested = text;
  nested.insert(nested.find("\"bridge\": {") + 11, "\"span\": 3,");
  CHECK_THROWS_AS(parse_config(nested), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("{"), std::invalid_argument);

  ScenarioConfig c = builtin_case("case2");
  c.contact = ContactMode::lcp;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = builtin_case("case3");
  c.interp = Interpolation::bspline;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = builtin_case("case1");
  c.dt = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("scheme names") {
  for (Scheme s : {Scheme::bauchau, Scheme::bathe, Scheme::bdf1, Scheme::bdf2, Scheme::direct}) {
    CHECK(parse_scheme(to_string(s)) == s);
  }
  CHECK_THROWS(parse_scheme("euler"));
}

TEST_CASE("simulation end follows the last wheel") {
  const ScenarioConfig c = builtin_case("case5");
  REQUIRE(c.t_end_after_exit);
  const double length = build_train_model(c).overall_length;
  const double last_offset = build_train_model(c).wheel_offsets.back() - build_train_model(c).wheel_offsets.front();
  CHECK(last_offset <= length);
  const double exit = (30.0 + last_offset - c.front_position) / c.speed;
  CHECK(c.effective_t_end() == doctest::Approx(exit + *c.t_end_after_exit));
}

TEST_CASE("resonance helper") { CHECK(resonance_speed(4.6, 20.0) == doctest::Approx(92.0)); }

TEST_CASE("short run writes a consistent trace") {
  ScenarioConfig c = builtin_case("case2");
  c.bridge.spans[0].elements = 10;
  c.bridge.spans[1].elements = 10;
  c.t_end = 0.05;
  c.probes = {45.0};
  const SimulationTrace tr = run(c);
  CHECK(tr.steps() == 51);
  CHECK(tr.t.back() == doctest::Approx(0.05));
  CHECK(tr.probe_x == std::vector<double>{15.0, 45.0});
  CHECK(tr.lambda_shift == doctest::Approx(-c.dt / 2));
  CHECK(tr.metadata.count("config_hash") == 1);

  const auto path = std::filesystem::temp_directory_path() / "vtsi_trace.csv";
  write_trace_csv(tr, path);
  write_metadata(tr, c, path);
  const std::string header = first_line(path);
  CHECK(header.rfind("t,u@15,", 0) == 0);
  CHECK(header.find("lambda_2") != std::string::npos);
  auto meta = path;
  meta += ".meta.json";
  CHECK(std::filesystem::exists(meta));
  std::filesystem::remove(path);
  std::filesystem::remove(meta);

  const Vec w1 = tr.column("lambda_1");
  CHECK(w1.size() == tr.steps());
  CHECK(w1(10) == tr.lambda(10, 0));
  CHECK_THROWS(tr.column("nope"));
}

TEST_CASE("parallel sweep matches serial runs") {
  ScenarioConfig c = builtin_case("case3");
  c.bridge.spans[0].elements = 6;
  c.bridge.spans[1].elements = 6;
  c.dt = 2e-3;
  c.t_end = 0.2;
  const std::vector<double> speeds{20.0, 40.0, 60.0};
  const auto par = sweep_speed(c, speeds, 3);
  const auto ser = sweep_speed(c, speeds, 1);
  REQUIRE(par.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(par[i].error.empty());
    CHECK(par[i].speed == speeds[i]);
    CHECK(par[i].max_u == ser[i].max_u);
  }
}

TEST_CASE("trace utilities") {
  Vec a(3), b(3);
  a << 1.0, 2.0, 3.0;
  b << 1.0, 2.5, 2.0;
  CHECK(relative_linf(a, b) == doctest::Approx(0.4));
  CHECK(relative_linf(Vec::Zero(2), Vec::Zero(2)) == 0.0);

  Vec v(3);
  v << 0.0, 1.0, 4.0;
  const Vec r = resample(v, 0.0, 0.5, {0.25, 0.75, 2.0});
  CHECK(r(0) == doctest::Approx(0.5));
  CHECK(r(1) == doctest::Approx(2.5));
  CHECK(r(2) == doctest::Approx(4.0));

  SimulationTrace tr;
  tr.dt = 0.1;
  tr.lambda = Mat(6, 2);
  tr.lambda_half = tr.lambda;
  for (int k = 0; k < 6; ++k) {
    tr.t.push_back(0.1 * k);
    tr.lambda(k, 0) = (k % 2 == 0) ? 1.0 : -1.0;
    tr.lambda(k, 1) = 3.0 * k;
  }
  // Second differences are +-4 for the first wheel and 0 for the second.
  CHECK(oscillation_metric(tr) == doctest::Approx(std::sqrt(8.0)));
  std::vector<bool> skip(6, false);
  skip[2] = true;
  CHECK(oscillation_metric(tr, skip) == doctest::Approx(std::sqrt(8.0)));
  const auto cmp = compare_traces(tr, tr);
  for (double d : cmp.relative_linf) CHECK(d <= 1e-15);
}
