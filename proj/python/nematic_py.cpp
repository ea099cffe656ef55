// Copyright 2026 The nematic-spectral Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Python bindings. JSON documents cross the boundary as Python dicts (via the
// json module); fields cross as float64 arrays indexed [z, y, x].

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "json.hpp"

#include "nematic/coefficients.hpp"
#include "nematic/config.hpp"
#include "nematic/diagnostics.hpp"
#include "nematic/driver.hpp"
#include "nematic/error.hpp"
#include "nematic/experiments.hpp"
#include "nematic/snapshot.hpp"

namespace py = pybind11;
using nlohmann::json;
using namespace nematic;

namespace {

py::object to_py(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

json from_py(const py::object& o) {
  return json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

RunConfig config_from(const py::object& o) {
  if (py::isinstance<py::str>(o)) return load_config(o.cast<std::string>());
  return parse_config(from_py(o));
}

py::array_t<double> cube(const RealArray& v, int n) {
  py::array_t<double> a({n, n, n});
  std::copy(v.begin(), v.end(), a.mutable_data());
  return a;
}

RealArray flat(const py::array_t<double, py::array::c_style | py::array::forcecast>& a, int n) {
  if (a.ndim() != 3 || a.shape(0) != n || a.shape(1) != n || a.shape(2) != n) {
    throw InvalidArgument("expected an array of shape (n, n, n)");
  }
  return RealArray(a.data(), a.data() + a.size());
}

py::dict fields(const State& s) {
  const int n = s.grid().n();
  const RealVector u = s.u.to_physical();
  const RealVector d = s.d.to_physical();
  py::dict out;
  out["u"] = py::make_tuple(cube(u[0], n), cube(u[1], n), cube(u[2], n));
  out["theta"] = cube(s.theta.to_physical(), n);
  out["d"] = py::make_tuple(cube(d[0], n), cube(d[1], n), cube(d[2], n));
  out["p"] = cube(s.p.to_physical(), n);
  out["t"] = s.t;
  return out;
}

/// Stepwise access to a run without touching the file system.
class Simulation {
 public:
  explicit Simulation(const py::object& config)
      : config_(config_from(config)),
        model_(make_model(config_.model)),
        K_(gronwall_constant_K(model_)),
        cfg_(config_.step_config()),
        grid_(Grid::create(config_.grid.n, config_.grid.D)),
        state_(make_initial_data(config_, grid_)) {
    state_.p = pressure_solve(state_, model_, cfg_.dealias_on);
    records_.push_back(make_record(state_, model_, K_, 0, 0));
  }

  /// Advances `count` steps and returns the last diagnostics record.
  py::object step(long count) {
    for (long i = 0; i < count; ++i) {
      const auto adv = picard_advance(state_, model_, cfg_);
      records_.push_back(make_record(adv.state, model_, K_, records_.back().step + 1, adv.iterations,
                                     &state_, &records_.back(), cfg_.dt));
      state_ = adv.state;
    }
    return to_py(records_.back().to_json());
  }

  void set_fields(const py::dict& f) {
    const int n = grid_.get()->n();
    State s = state_;
    if (f.contains("u")) {
      const auto u = f["u"].cast<py::sequence>();
      s.u = VectorField::from_physical(grid_, {flat(u[0].cast<py::array_t<double>>(), n),
                                               flat(u[1].cast<py::array_t<double>>(), n),
                                               flat(u[2].cast<py::array_t<double>>(), n)});
    }
    if (f.contains("theta")) {
      s.theta = ScalarField::from_physical(grid_, flat(f["theta"].cast<py::array_t<double>>(), n));
    }
    if (f.contains("d")) {
      const auto d = f["d"].cast<py::sequence>();
      s.d = VectorField::from_physical(grid_, {flat(d[0].cast<py::array_t<double>>(), n),
                                               flat(d[1].cast<py::array_t<double>>(), n),
                                               flat(d[2].cast<py::array_t<double>>(), n)});
    }
    s.p = pressure_solve(s, model_, cfg_.dealias_on);
    state_ = std::move(s);
    records_.assign(1, make_record(state_, model_, K_, 0, 0));
  }

  py::dict get_fields() const { return fields(state_); }
  double time() const { return state_.t; }
  double energy() const { return records_.back().total_energy; }
  py::list history() const {
    py::list out;
    for (const auto& r : records_) out.append(to_py(r.to_json()));
    return out;
  }
  py::object config() const { return to_py(serialize_config(config_)); }

 private:
  RunConfig config_;
  CoefficientModel model_;
  double K_;
  StepConfig cfg_;
  GridPtr grid_;
  State state_;
  std::vector<DiagnosticsRecord> records_;
};

RunOptions options_for(const std::string& root, std::optional<long> max_steps) {
  RunOptions o;
  o.output_root = root;
  o.max_steps = max_steps;
  return o;
}

py::dict summary(const RunSummary& s) {
  py::dict d;
  d["exit_code"] = static_cast<int>(s.code);
  d["last_step"] = s.last_step;
  d["t"] = s.t;
  d["message"] = s.message;
  return d;
}

}  // namespace

PYBIND11_MODULE(nematic_spectral, m) {
  m.doc() = "Pseudo-spectral solver for non-isothermal nematic liquid crystal flow";

  static py::exception<NematicError> base(m, "NematicError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());
  py::register_exception<PicardFailure>(m, "PicardFailure", base.ptr());
  py::register_exception<TemperatureBelowFloor>(m, "TemperatureBelowFloor", base.ptr());

  py::class_<CoefficientModel>(m, "CoefficientModel")
      .def_static("builtin", &CoefficientModel::builtin, py::arg("theta_floor") = 1.0,
                  py::arg("lambda_bar") = 1.0, py::arg("a") = 1.0, py::arg("mu_lo") = 0.1,
                  py::arg("mu_hi") = 1.0)
      .def_static("constant", &CoefficientModel::constant, py::arg("mu"), py::arg("lambda_"),
                  py::arg("theta_floor") = 1.0)
      .def_property_readonly("name", &CoefficientModel::name)
      .def_property_readonly("theta_floor", &CoefficientModel::theta_floor)
      .def("mu", &CoefficientModel::mu)
      .def("mu_d1", &CoefficientModel::mu_d1)
      .def("lambda_", &CoefficientModel::lambda)
      .def("lambda_d1", &CoefficientModel::lambda_d1)
      .def("capital_lambda", [](const CoefficientModel& self, double theta) {
        return capital_lambda_eval(self, theta);
      })
      .def("gronwall_constant_K", [](const CoefficientModel& self) { return gronwall_constant_K(self); });

  m.def("validate_assumptions",
        [](const CoefficientModel& model, const std::vector<double>& samples) {
          const auto r = validate_assumptions(model, samples);
          py::dict out;
          out["passed"] = r.passed;
          out["violations"] = r.violations();
          py::list checks;
          for (const auto& c : r.checks) checks.append(py::make_tuple(c.name, c.margin, c.ok));
          out["checks"] = checks;
          return out;
        },
        py::arg("model"), py::arg("samples"));
  m.def("uniform_samples", &uniform_samples, py::arg("hi"), py::arg("step"));
  m.def("model_from_config", [](const py::object& c) { return make_model(config_from(c).model); },
        py::arg("config"));

  m.def("resolve_config", [](const py::object& c) { return to_py(serialize_config(config_from(c))); },
        py::arg("config"), "Validates a config dict (or file path) and returns it with defaults filled in.");

  m.def("run",
        [](const py::object& c, const std::string& root, std::optional<long> max_steps) {
          return summary(run(config_from(c), options_for(root, max_steps)));
        },
        py::arg("config"), py::arg("output_root") = ".", py::arg("max_steps") = py::none());
  m.def("resume",
        [](const py::object& c, const std::string& snapshot, const std::string& root,
           std::optional<long> max_steps) {
          return summary(resume(config_from(c), snapshot, options_for(root, max_steps)));
        },
        py::arg("config"), py::arg("snapshot"), py::arg("output_root") = ".", py::arg("max_steps") = py::none());
  m.def("read_diagnostics", [](const std::string& path) {
    py::list out;
    for (const auto& r : read_diagnostics(path)) out.append(to_py(r.to_json()));
    return out;
  });
  m.def("read_snapshot", [](const std::string& path) {
    const Snapshot s = read_snapshot(path);
    py::dict out;
    out["n"] = s.n;
    out["D"] = s.half_width;
    out["time"] = s.time;
    out["step"] = s.step;
    py::list comps;
    for (const auto& c : s.components) comps.append(cube(c, s.n));
    out["components"] = comps;
    return out;
  });

  m.def("manufactured_convergence",
        [](const py::object& c) { return to_py(manufactured_convergence(config_from(c)).to_json()); },
        py::arg("config"));
  m.def("uniqueness_experiment",
        [](const py::object& c) { return to_py(uniqueness_experiment(config_from(c)).to_json()); },
        py::arg("config"));
  m.def("mode_refinement_study",
        [](const py::object& c) { return to_py(mode_refinement_study(config_from(c)).to_json()); },
        py::arg("config"));
  m.def("blowup_monitor",
        [](const std::vector<double>& t, const std::vector<double>& F) {
          const auto e = blowup_monitor(t, F);
          return py::make_tuple(e.t_star, e.c_fit);
        },
        py::arg("times"), py::arg("F"), "Returns (t_star, c_fit).");

  py::class_<Simulation>(m, "Simulation")
      .def(py::init<const py::object&>(), py::arg("config"))
      .def("step", &Simulation::step, py::arg("count") = 1)
      .def("fields", &Simulation::get_fields)
      .def("set_fields", &Simulation::set_fields, py::arg("fields"))
      .def_property_readonly("t", &Simulation::time)
      .def_property_readonly("energy", &Simulation::energy)
      .def("history", &Simulation::history)
      .def("config", &Simulation::config);
}
