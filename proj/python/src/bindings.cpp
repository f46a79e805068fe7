#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "torus_jscc/channel.hpp"
#include "torus_jscc/codec.hpp"
#include "torus_jscc/design.hpp"
#include "torus_jscc/json_io.hpp"

namespace py = pybind11;
using namespace torus_jscc;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Analog source-channel codes from curves on flat-torus layers";

  // Owned by the module for the life of the interpreter.
  static py::handle error_type = py::exception<Error>(m, "TorusJsccError", PyExc_ValueError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = error_type(std::string(to_string(e.kind())) + ": " + e.what());
      exc.attr("kind") = to_string(e.kind());
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  py::class_<TorusSpec>(m, "TorusSpec")
      .def(py::init<Vec>(), py::arg("c"))
      .def_static("normalized", &TorusSpec::normalized, py::arg("c"))
      .def_static("central", &TorusSpec::central, py::arg("n"))
      .def_property_readonly("c", &TorusSpec::c)
      .def_property_readonly("dim", &TorusSpec::dim)
      .def_property_readonly("c_min", &TorusSpec::c_min)
      .def("box_periods", &TorusSpec::box_periods);

  py::class_<DistanceBounds>(m, "DistanceBounds")
      .def_readonly("lower", &DistanceBounds::lower)
      .def_readonly("upper", &DistanceBounds::upper);

  m.def("phi", &phi, py::arg("torus"), py::arg("u"));
  m.def("reduce_to_box", &reduce_to_box, py::arg("torus"), py::arg("u"));
  m.def("inter_torus_distance", &inter_torus_distance, py::arg("a"), py::arg("b"));
  m.def("intra_torus_distance", &intra_torus_distance, py::arg("torus"), py::arg("u"), py::arg("v"));
  m.def("distance_bounds", &distance_bounds, py::arg("torus"), py::arg("delta"));

  py::class_<CurveSpec>(m, "CurveSpec")
      .def(py::init<TorusSpec, IntVec>(), py::arg("torus"), py::arg("u"))
      .def_property_readonly("torus", &CurveSpec::torus)
      .def_property_readonly("u", &CurveSpec::u)
      .def_property_readonly("u_hat", &CurveSpec::u_hat)
      .def_property_readonly("length", &CurveSpec::length)
      .def_property_readonly("spacing", &CurveSpec::spacing)
      .def_property_readonly("ball_lower", &CurveSpec::ball_lower)
      .def_property_readonly("ball_upper", &CurveSpec::ball_upper);

  m.def("curve_point", &curve_point, py::arg("curve"), py::arg("x"));
  m.def("line_spacing", &line_spacing, py::arg("torus"), py::arg("u"));

  py::class_<SchemeCode>(m, "SchemeCode")
      .def(py::init<std::vector<CurveSpec>, double, double>(), py::arg("curves"), py::arg("alpha"),
           py::arg("delta"))
      .def_property_readonly("curves", &SchemeCode::curves)
      .def_property_readonly("lengths", &SchemeCode::lengths)
      .def_property_readonly("breakpoints", &SchemeCode::breakpoints)
      .def_property_readonly("total_length", &SchemeCode::total_length)
      .def_property_readonly("alpha", &SchemeCode::alpha)
      .def_property_readonly("delta", &SchemeCode::delta)
      .def_property_readonly("ball_radius", &SchemeCode::ball_radius)
      .def_property_readonly("dim", &SchemeCode::dim)
      .def("__len__", &SchemeCode::size)
      .def("to_json", [](const SchemeCode& s) { return to_json(s).dump(); })
      .def_static("from_json", [](const std::string& text) { return scheme_from_json(json::parse(text)); },
                  py::arg("text"));

  m.def(
      "design_scheme",
      [](int n, double delta, double alpha, std::int64_t w_max) {
        DesignOptions options;
        options.alpha = alpha;
        options.w_max = w_max;
        return design_scheme(n, delta, options).scheme;
      },
      py::arg("n"), py::arg("delta"), py::arg("alpha") = 1.0, py::arg("w_max") = 10000);

  py::class_<DecodeResult>(m, "DecodeResult")
      .def_readonly("x", &DecodeResult::x)
      .def_readonly("layer", &DecodeResult::layer)
      .def_readonly("flagged", &DecodeResult::flagged)
      .def_readonly("undecodable", &DecodeResult::undecodable);

  m.def("encode", &encode, py::arg("scheme"), py::arg("x"));
  m.def(
      "decode", [](const SchemeCode& s, const Vec& y) { return decode(s, y); }, py::arg("scheme"), py::arg("y"));

  py::class_<SimResult>(m, "SimResult")
      .def_readonly("mse", &SimResult::mse)
      .def_readonly("mse_ci95", &SimResult::mse_ci95)
      .def_readonly("anomaly_rate", &SimResult::anomaly_rate)
      .def_readonly("trials_flagged", &SimResult::trials_flagged)
      .def_readonly("trials", &SimResult::trials);

  m.def(
      "run_mse",
      [](const SchemeCode& s, double sigma, std::uint64_t trials, std::uint64_t seed, unsigned workers) {
        SimConfig config{sigma, trials, seed, workers};
        py::gil_scoped_release release;
        return run_mse(s, config);
      },
      py::arg("scheme"), py::arg("sigma"), py::arg("trials"), py::arg("seed"), py::arg("workers") = 1);

  py::class_<TradeoffRow>(m, "TradeoffRow")
      .def_readonly("delta", &TradeoffRow::delta)
      .def_readonly("length_single", &TradeoffRow::length_single)
      .def_readonly("length_multi", &TradeoffRow::length_multi)
      .def_readonly("curves_multi", &TradeoffRow::curves_multi)
      .def_readonly("layers", &TradeoffRow::layers);

  m.def(
      "tradeoff",
      [](int n, const std::vector<double>& deltas, std::int64_t w_max) {
        TradeoffOptions options;
        options.w_max = w_max;
        return tradeoff_table(n, deltas, options);
      },
      py::arg("n"), py::arg("deltas"), py::arg("w_max") = 10000);
}
