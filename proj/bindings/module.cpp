#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <string>
#include <vector>

#include "json.hpp"

#include "bladedisk/config.hpp"
#include "bladedisk/errors.hpp"
#include "bladedisk/runner.hpp"
#include "bladedisk/signals.hpp"
#include "bladedisk/solver.hpp"

namespace py = pybind11;

namespace {

py::array_t<double> as_array(const std::vector<double>& v) {
  py::array_t<double> out(py::ssize_t(v.size()));
  std::memcpy(out.mutable_data(), v.data(), v.size() * sizeof(double));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  using namespace bladedisk;

  m.doc() = "Reduced-order bladed-disk rotor dynamics";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

  py::class_<Scenario>(m, "Scenario")
      .def_property_readonly("stage_count", [](const Scenario& sc) { return sc.stages.size(); })
      .def_property_readonly("duration", [](const Scenario& sc) { return sc.solver.duration; })
      .def_property_readonly("dt", [](const Scenario& sc) { return sc.solver.dt; })
      .def("manifest", &dump_manifest,
           "Fully resolved configuration as JSON text; loading it back reproduces the scenario.")
      .def("__repr__", [](const Scenario& sc) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "<bladedisk.Scenario: %zu stage(s), %g s at dt=%g>",
                      sc.stages.size(), sc.solver.duration, sc.solver.dt);
        return std::string(buf);
      });

  m.def("load_file", &load_scenario_file, py::arg("path"),
        "Parse and validate a scenario from a JSON config file.");
  m.def(
      "load_text",
      [](const std::string& text) {
        nlohmann::json j;
        try {
          j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
          throw ValidationError("config is not valid JSON: " + std::string(e.what()));
        }
        return scenario_from_json(j);
      },
      py::arg("text"), "Parse and validate a scenario from JSON text.");

  py::class_<TimeSeries>(m, "TimeSeries")
      .def_readonly("dt", &TimeSeries::dt)
      .def_readonly("start", &TimeSeries::start)
      .def_readonly("names", &TimeSeries::names)
      .def_property_readonly("samples", &TimeSeries::samples)
      .def_property_readonly("times",
                             [](const TimeSeries& ts) {
                               std::vector<double> t(ts.samples());
                               for (size_t k = 0; k < t.size(); ++k) t[k] = ts.time(k);
                               return as_array(t);
                             })
      .def("has", &TimeSeries::has, py::arg("name"))
      .def(
          "channel",
          [](const TimeSeries& ts, const std::string& name) { return as_array(ts.channel(name)); },
          py::arg("name"));

  py::class_<Spectrum>(m, "Spectrum")
      .def_property_readonly("frequencies",
                             [](const Spectrum& s) { return as_array(s.frequencies); })
      .def_property_readonly("amplitude", [](const Spectrum& s) { return as_array(s.amplitude); })
      .def_property_readonly("phase", [](const Spectrum& s) { return as_array(s.phase); });

  py::class_<Spectrogram>(m, "Spectrogram")
      .def_readonly("window_length", &Spectrogram::window_length)
      .def_readonly("hop", &Spectrogram::hop)
      .def_property_readonly("times", [](const Spectrogram& s) { return as_array(s.times); })
      .def_property_readonly("frequencies",
                             [](const Spectrogram& s) { return as_array(s.frequencies); })
      .def_readonly("grid", &Spectrogram::grid);

  py::class_<SimulationResult>(m, "SimulationResult")
      .def_readonly("series", &SimulationResult::series)
      .def_property_readonly(
          "modal_frequencies_hz",
          [](const SimulationResult& r) { return as_array(r.modal_frequencies_hz); })
      .def_readonly("rayleigh_a0", &SimulationResult::rayleigh_a0)
      .def_readonly("rayleigh_a1", &SimulationResult::rayleigh_a1);

  m.def("simulate", &simulate, py::arg("scenario"), py::call_guard<py::gil_scoped_release>(),
        "Integrate the scenario and return the time series and modal summary.");
  m.def("simulate_to_directory", &simulate_to_directory, py::arg("scenario"), py::arg("out_dir"),
        py::call_guard<py::gil_scoped_release>(),
        "Run the scenario and write timeseries.csv, radial CSVs, and run.json into out_dir.");
  m.def("modal_report_json", &modal_report_text, py::arg("scenario"), py::arg("case"),
        py::arg("count"),
        "JSON text of the modal report for one of the cases blade, shaft, assembly.");
  m.def("run_sweep", &run_sweep, py::arg("sweep_path"), py::arg("jobs"), py::arg("out_dir"),
        py::call_guard<py::gil_scoped_release>(),
        "Run every case in a sweep file; returns the number of failed runs.");

  m.def(
      "spectrum",
      [](const std::vector<double>& channel, double dt) { return spectrum(channel, dt); },
      py::arg("channel"), py::arg("dt"), "Hann-windowed amplitude spectrum of one channel.");
  m.def(
      "stft",
      [](const std::vector<double>& channel, double dt, int window_length, int hop) {
        return stft(channel, dt, window_length, hop);
      },
      py::arg("channel"), py::arg("dt"), py::arg("window_length"), py::arg("hop"),
      "Short-time Fourier transform magnitude grid (frequencies x frames).");
  m.def(
      "radial",
      [](const std::vector<double>& u_y, const std::vector<double>& u_z) {
        return as_array(radial(u_y, u_z));
      },
      py::arg("u_y"), py::arg("u_z"), "Lateral orbit radius sqrt(u_y^2 + u_z^2) per sample.");
  m.def("stage_difference_spectrum", &stage_difference_spectrum, py::arg("r1"), py::arg("r2"),
        py::arg("dt"), "Spectrum of the difference of two radial channels.");
}
