#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "vtsi/bridge.hpp"
#include "vtsi/bspline.hpp"
#include "vtsi/irregularity.hpp"
#include "vtsi/lcp.hpp"
#include "vtsi/scenario.hpp"
#include "vtsi/trace.hpp"
#include "vtsi/train.hpp"

namespace py = pybind11;
using namespace vtsi;

namespace {

ScenarioConfig to_config(const py::object& obj) {
  if (py::isinstance<ScenarioConfig>(obj)) return obj.cast<ScenarioConfig>();
  const auto text = obj.cast<std::string>();
  const auto names = case_names();
  if (std::find(names.begin(), names.end(), text) != names.end()) return builtin_case(text);
  return parse_config(text);
}

}  // namespace

PYBIND11_MODULE(_vtsi, m) {
  m.doc() = "Train-bridge interaction with constrained multibody integrators.";

  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
  py::register_exception<LcpRayTermination>(m, "LcpRayTermination", PyExc_RuntimeError);

  py::enum_<EndCondition>(m, "EndCondition")
      .value("fixed", EndCondition::fixed)
      .value("simply_supported", EndCondition::simply_supported);

  py::class_<SpanSpec>(m, "SpanSpec")
      .def(py::init([](double length, int elements) { return SpanSpec{length, elements}; }),
           py::arg("length"), py::arg("elements"))
      .def_readwrite("length", &SpanSpec::length)
      .def_readwrite("elements", &SpanSpec::elements);

  py::class_<BridgeSpec>(m, "BridgeSpec")
      .def(py::init<>())
      .def_readwrite("spans", &BridgeSpec::spans)
      .def_readwrite("E", &BridgeSpec::E)
      .def_readwrite("I", &BridgeSpec::I)
      .def_readwrite("mu", &BridgeSpec::mu)
      .def_readwrite("ends", &BridgeSpec::ends)
      .def_readwrite("approach_elements", &BridgeSpec::approach_elements)
      .def_readwrite("self_weight", &BridgeSpec::self_weight);

  py::class_<BridgeModel>(m, "BridgeModel")
      .def_readonly("node_x", &BridgeModel::node_x)
      .def_readonly("free_index", &BridgeModel::free_index)
      .def_readonly("x_start", &BridgeModel::x_start)
      .def_readonly("x_end", &BridgeModel::x_end)
      .def_property_readonly("M", [](const BridgeModel& b) { return b.system.M; })
      .def_property_readonly("C", [](const BridgeModel& b) { return b.system.C; })
      .def_property_readonly("K", [](const BridgeModel& b) { return b.system.K; })
      .def_property_readonly("P", [](const BridgeModel& b) { return b.system.P; })
      .def_property_readonly("n_free", &BridgeModel::n_free);

  m.def("assemble_bridge", &assemble_bridge, py::arg("spec"));
  m.def("natural_frequencies", &natural_frequencies, py::arg("model"), py::arg("count"));
  m.def("rayleigh_damping", &rayleigh_damping, py::arg("model"), py::arg("xi"),
        py::arg("modes") = std::pair<int, int>{1, 2});
  m.def("element_influence", &element_influence, py::arg("a"), py::arg("l"));
  m.def("assemble_Lb", [](const BridgeModel& b, const std::vector<double>& x, int order) {
    return Mat(assemble_Lb(b, x, order));
  }, py::arg("model"), py::arg("x"), py::arg("order") = 0);

  py::class_<CarSpec>(m, "CarSpec")
      .def(py::init<>())
      .def_readwrite("m_c", &CarSpec::m_c)
      .def_readwrite("I_c", &CarSpec::I_c)
      .def_readwrite("m_w", &CarSpec::m_w)
      .def_readwrite("k_s", &CarSpec::k_s)
      .def_readwrite("c_s", &CarSpec::c_s)
      .def_readwrite("l_c", &CarSpec::l_c)
      .def_readwrite("l_ct", &CarSpec::l_ct);

  py::class_<TrainModel>(m, "TrainModel")
      .def_property_readonly("M", [](const TrainModel& t) { return t.system.M; })
      .def_property_readonly("C", [](const TrainModel& t) { return t.system.C; })
      .def_property_readonly("K", [](const TrainModel& t) { return t.system.K; })
      .def_property_readonly("P", [](const TrainModel& t) { return t.system.P; })
      .def_property_readonly("labels", [](const TrainModel& t) { return t.system.labels; })
      .def_readonly("Lt", &TrainModel::Lt)
      .def_readonly("wheel_offsets", &TrainModel::wheel_offsets)
      .def_property_readonly("weight", &TrainModel::weight);

  m.def("build_car", &build_car, py::arg("spec"));
  m.def("build_train", [](const std::vector<CarSpec>& cars, std::optional<std::vector<double>> gaps) {
    return build_train(cars, gaps);
  }, py::arg("cars"), py::arg("gaps") = py::none());

  py::class_<PsdParams>(m, "PsdParams")
      .def(py::init<>())
      .def_readwrite("A", &PsdParams::A)
      .def_readwrite("omega_r", &PsdParams::omega_r)
      .def_readwrite("omega_c", &PsdParams::omega_c)
      .def_readwrite("omega_l", &PsdParams::omega_l)
      .def_readwrite("omega_u", &PsdParams::omega_u)
      .def_readwrite("N", &PsdParams::N);
  m.def("psd", py::vectorize([](double w) { return psd(w); }), py::arg("omega"));

  py::class_<IrregularityProfile>(m, "IrregularityProfile")
      .def_readonly("amplitude", &IrregularityProfile::amplitude)
      .def_readonly("omega", &IrregularityProfile::omega)
      .def_readonly("phase", &IrregularityProfile::phase)
      .def_readonly("scale", &IrregularityProfile::scale)
      .def("__call__", [](const IrregularityProfile& p, py::array_t<double> x) {
        return py::vectorize([&p](double v) { return p.eval(v); })(x);
      }, py::arg("x"));

  m.def("generate_irregularity",
        [](std::uint64_t seed, const PsdParams& params, double tolerance, double x_from, double x_to,
           double zero_before, std::optional<double> zero_after) {
          GenerateOptions o;
          o.tolerance = tolerance;
          o.x_from = x_from;
          o.x_to = x_to;
          o.zero_before = zero_before;
          if (zero_after) o.zero_after = *zero_after;
          return generate_irregularity(seed, params, o);
        },
        py::arg("seed"), py::arg("params") = PsdParams{}, py::arg("tolerance") = 2.7e-3,
        py::arg("x_from") = 0.0, py::arg("x_to") = 100.0, py::arg("zero_before") = 0.0,
        py::arg("zero_after") = py::none());

  m.def("open_uniform_knots", &open_uniform_knots, py::arg("n_ctrl"), py::arg("k") = 4);
  m.def("bspline_basis", &bspline_basis, py::arg("knots"), py::arg("i"), py::arg("k"), py::arg("t"));

  m.def("lcp_solve", [](const Mat& A, const Vec& q) {
    const auto r = lcp_solve(A, q);
    return py::make_tuple(r.z, r.w);
  }, py::arg("A"), py::arg("q"));

  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def_readwrite("name", &ScenarioConfig::name)
      .def_readwrite("speed", &ScenarioConfig::speed)
      .def_readwrite("dt", &ScenarioConfig::dt)
      .def_readwrite("t_end", &ScenarioConfig::t_end)
      .def_readwrite("bridge", &ScenarioConfig::bridge)
      .def_readwrite("probes", &ScenarioConfig::probes)
      .def_property("scheme", [](const ScenarioConfig& c) { return to_string(c.scheme); },
                    [](ScenarioConfig& c, const std::string& s) { c.scheme = parse_scheme(s); })
      .def("to_json", &serialize_config)
      .def("hash", &config_hash)
      .def_static("from_json", &parse_config);

  m.def("cases", &case_names);
  m.def("case_description", &case_description, py::arg("name"));
  m.def("case_config", &builtin_case, py::arg("name"));

  py::class_<SimulationTrace>(m, "Trace")
      .def_readonly("scheme", &SimulationTrace::scheme)
      .def_readonly("dt", &SimulationTrace::dt)
      .def_readonly("lambda_shift", &SimulationTrace::lambda_shift)
      .def_readonly("t", &SimulationTrace::t)
      .def_readonly("probe_x", &SimulationTrace::probe_x)
      .def_readonly("probe_u", &SimulationTrace::probe_u)
      .def_readonly("probe_v", &SimulationTrace::probe_v)
      .def_readonly("probe_a", &SimulationTrace::probe_a)
      .def_readonly("train_labels", &SimulationTrace::train_labels)
      .def_readonly("train_u", &SimulationTrace::train_u)
      .def_readonly("contact_forces", &SimulationTrace::lambda)
      .def_readonly("constraint_residual", &SimulationTrace::constraint_residual)
      .def_readonly("metadata", &SimulationTrace::metadata)
      .def("header", &SimulationTrace::header)
      .def("column", &SimulationTrace::column, py::arg("name"))
      .def("write_csv", [](const SimulationTrace& t, const std::filesystem::path& p) { write_trace_csv(t, p); })
      .def("oscillation_metric", [](const SimulationTrace& t) { return oscillation_metric(t); });

  m.def("run", [](const py::object& config) {
    const ScenarioConfig c = to_config(config);
    py::gil_scoped_release release;
    return run(c);
  }, py::arg("config"), "Run a case name, a JSON config string or a ScenarioConfig.");

  m.def("sweep_speed", [](const py::object& config, const std::vector<double>& speeds, int threads) {
    const ScenarioConfig c = to_config(config);
    std::vector<SweepRow> rows;
    {
      py::gil_scoped_release release;
      rows = sweep_speed(c, speeds, threads);
    }
    py::list out;
    for (const auto& r : rows) {
      py::dict d;
      d["speed"] = r.speed;
      d["max_u"] = r.max_u;
      d["max_a"] = r.max_a;
      d["error"] = r.error;
      out.append(d);
    }
    return out;
  }, py::arg("config"), py::arg("speeds"), py::arg("threads") = 0);

  m.def("resonance_speed", &resonance_speed, py::arg("bridge_frequency"), py::arg("car_length"));
}
