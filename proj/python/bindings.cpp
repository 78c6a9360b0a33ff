#include "corruga/analysis.hpp"
#include "corruga/verification.hpp"
#include "corruga/warping.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace corruga;

namespace {

SectionCurve make_section(const Eigen::MatrixX2d& points, bool closed) {
  SectionCurve c;
  c.closed = closed;
  for (Eigen::Index i = 0; i < points.rows(); ++i) c.points.push_back(points.row(i).transpose());
  c.validate();
  return c;
}

Eigen::MatrixX2d section_points(const SectionCurve& c) {
  Eigen::MatrixX2d out(static_cast<Eigen::Index>(c.points.size()), 2);
  for (std::size_t i = 0; i < c.points.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = c.points[i];
  return out;
}

py::dict criterion_dict(const CriterionResult& r) {
  py::dict metrics;
  for (const auto& [k, v] : r.metrics) metrics[py::str(k)] = v;
  py::dict d;
  d["id"] = r.id;
  d["title"] = r.title;
  d["passed"] = r.passed;
  d["detail"] = r.detail;
  d["metrics"] = metrics;
  d["line"] = format_line(r);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Linearized isometries of periodic corrugated surfaces";

  py::class_<SurfaceChart>(m, "Chart")
      .def_static("builtin", [](const std::string& name) { return builtin_chart(name); }, py::arg("name"))
      .def_static("from_json", &chart_from_json, py::arg("text"))
      .def_static("load", &load_chart, py::arg("path"))
      .def("to_json", &chart_to_json)
      .def("save", [](const SurfaceChart& c, const std::string& path) { save_chart(c, path); })
      .def("evaluate", [](const SurfaceChart& c, double x1, double x2) {
        return evaluate_chart(c, Eigen::Vector2d(x1, x2));
      });
  m.def("builtin_names", &builtin_chart_names);

  py::class_<Analysis>(m, "Analysis")
      .def_property_readonly("dims", &Analysis::dims)
      .def_property_readonly("ambiguous", &Analysis::ambiguous)
      .def_property_readonly("null_dim", [](const Analysis& a) { return a.spaces ? a.spaces->null_dim : 0; })
      .def_property_readonly("E_basis", [](const Analysis& a) {
        return a.spaces ? a.spaces->E_basis : std::vector<Mat2>{};
      })
      .def_property_readonly("chi_basis", [](const Analysis& a) {
        return a.spaces ? a.spaces->chi_basis : std::vector<Mat2>{};
      })
      .def_property_readonly("singular_values", [](const Analysis& a) { return a.nullspace.spectrum; })
      .def_property_readonly("max_pair_residual", &Analysis::max_pair_residual)
      .def_property_readonly("corner_residual", [](const Analysis& a) { return a.corner_residual; })
      .def("report_json", &report_json, py::arg("indent") = 2)
      .def("__repr__", [](const Analysis& a) {
        const auto d = a.dims();
        return "<Analysis dims=(" + std::to_string(d[0]) + "," + std::to_string(d[1]) + ")>";
      });

  m.def(
      "analyze",
      [](const SurfaceChart& chart, int n1, int n2, std::optional<double> cut, std::uint64_t seed) {
        AnalysisOptions o;
        o.resolution = {n1, n2 > 0 ? n2 : n1};
        if (cut) o.policy = ThresholdPolicy::fixed(*cut);
        o.seed = seed;
        py::gil_scoped_release release;
        return analyze(chart, o);
      },
      py::arg("chart"), py::arg("resolution") = 32, py::arg("resolution2") = 0,
      py::arg("cut") = py::none(), py::arg("seed") = 1);

  m.def(
      "verify",
      [](const std::string& suite, int resolution, std::uint64_t seed) {
        VerifyOptions o;
        o.resolution = resolution;
        o.seed = seed;
        VerificationContext ctx(o);
        std::vector<CriterionResult> results;
        {
          py::gil_scoped_release release;
          results = run_suite(suite, ctx);
        }
        py::list out;
        for (const auto& r : results) out.append(criterion_dict(r));
        return out;
      },
      py::arg("suite") = "all", py::arg("resolution") = 64, py::arg("seed") = 20240917);

  m.def(
      "warping",
      [](const Eigen::MatrixX2d& points, double alpha, bool closed) {
        const WarpingResult r = warping_function(make_section(points, closed), alpha);
        return py::make_tuple(r.s, r.w);
      },
      py::arg("points"), py::arg("alpha") = 1.0, py::arg("closed") = false);
  m.def(
      "dislocation",
      [](const Eigen::MatrixX2d& points, double alpha) {
        return dislocation(make_section(points, true), alpha);
      },
      py::arg("points"), py::arg("alpha") = 1.0);
  m.def(
      "circle_section",
      [](double r, int n) { return section_points(circle_section(r, n)); }, py::arg("radius"),
      py::arg("segments"));
  m.def(
      "square_section", [](double a) { return section_points(square_section(a)); }, py::arg("side"));
  m.def(
      "l_section", [](double a, double b) { return section_points(l_section(a, b)); }, py::arg("a"),
      py::arg("b"));
}
