#include "itrace/errors.hpp"
#include "itrace/jacobi.hpp"
#include "itrace/pkd_basis.hpp"
#include "itrace/projection.hpp"
#include "itrace/simplex_geometry.hpp"
#include "itrace/simplex_quadrature.hpp"
#include "itrace/trace_constants.hpp"

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace itrace;

namespace {

std::vector<Point> rows_to_points(const Eigen::MatrixXd& rows)
{
  std::vector<Point> points;
  points.reserve(static_cast<std::size_t>(rows.rows()));
  for (Eigen::Index i = 0; i < rows.rows(); ++i)
    points.emplace_back(rows.row(i).transpose());
  return points;
}

Eigen::MatrixXd points_to_rows(const std::vector<Point>& points, int dim)
{
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(points.size()), dim);
  for (std::size_t i = 0; i < points.size(); ++i)
    rows.row(static_cast<Eigen::Index>(i)) = points[i].transpose();
  return rows;
}

std::vector<std::vector<int>> mode_list(const BasisSpec& spec)
{
  std::vector<std::vector<int>> out;
  out.reserve(spec.size());
  for (const auto& m : spec.modes)
    out.push_back(m.components());
  return out;
}

py::dict report_dict(const SharpConstantReport& r)
{
  py::dict d;
  d["p"] = r.p;
  d["n"] = r.n;
  d["d"] = r.d;
  d["face_id"] = r.face_id;
  d["closed_form"] = r.closed_form;
  d["numeric_rho"] = r.numeric_rho;
  d["wh_bound"] = r.wh_bound;
  d["extremal_coeffs"] = r.extremal_coeffs;
  d["achieved_ratio"] = r.achieved_ratio;
  return d;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
  m.doc() = "Sharp inverse trace constants on simplices";

  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_RuntimeError);
  py::register_exception<InputError>(m, "InputError", PyExc_RuntimeError);

  py::class_<Simplex>(m, "Simplex")
      .def(py::init([](const Eigen::MatrixXd& vertices) {
             return Simplex(rows_to_points(vertices));
           }),
           py::arg("vertices"), "Vertices as a (d+1, d) array.")
      .def_property_readonly("dim", &Simplex::dim)
      .def_property_readonly("volume", &Simplex::volume)
      .def_property_readonly("vertices",
                             [](const Simplex& s) { return points_to_rows(s.vertices(), s.dim()); })
      .def("__repr__", [](const Simplex& s) {
        return "<Simplex dim=" + std::to_string(s.dim()) + " volume=" + std::to_string(s.volume())
               + ">";
      });

  py::class_<Face>(m, "Face")
      .def_readonly("parent_dim", &Face::parent_dim)
      .def_readonly("opposite_vertex", &Face::opposite_vertex)
      .def_readonly("measure", &Face::measure)
      .def_property_readonly("vertices",
                             [](const Face& f) { return points_to_rows(f.vertices, f.parent_dim); });

  m.def("reference_simplex", &reference_simplex, py::arg("d"));
  m.def("face", &face, py::arg("simplex"), py::arg("opposite"));
  m.def("collapsed_face_index", &collapsed_face_index, py::arg("d"));
  m.def("duffy_map", &duffy_map, py::arg("cube_point"));
  m.def("inverse_duffy_map", &inverse_duffy_map, py::arg("simplex_point"));

  m.def("jacobi_eval",
        [](int n, double alpha, double beta, double x) { return jacobi_eval(n, {alpha, beta}, x); },
        py::arg("n"), py::arg("alpha"), py::arg("beta"), py::arg("x"));
  m.def("jacobi_norm_sq",
        [](int n, double alpha, double beta) { return jacobi_norm_sq(n, {alpha, beta}); },
        py::arg("n"), py::arg("alpha"), py::arg("beta"));
  m.def(
      "gauss_jacobi_rule",
      [](int points, double alpha, double beta) {
        const auto rule = gauss_jacobi_rule(points, {alpha, beta});
        return py::make_tuple(rule.nodes, rule.weights);
      },
      py::arg("points"), py::arg("alpha"), py::arg("beta"), "Returns (nodes, weights).");

  m.def("dim_polynomial_space", &dim_polynomial_space, py::arg("p"), py::arg("d"));
  m.def(
      "enumerate_modes", [](int p, int d) { return mode_list(enumerate_modes(p, d)); },
      py::arg("p"), py::arg("d"), "Multi-indices in graded order.");
  m.def(
      "pkd_eval",
      [](const std::vector<int>& mode, const Point& x) { return pkd_eval(MultiIndex(mode), x); },
      py::arg("mode"), py::arg("point"));
  m.def(
      "pkd_eval_batch",
      [](int p, int d, const Eigen::MatrixXd& points) {
        return pkd_eval_batch(enumerate_modes(p, d), rows_to_points(points));
      },
      py::arg("p"), py::arg("d"), py::arg("points"),
      "Matrix of basis values, one row per mode and one column per point.");
  m.def(
      "simplex_rule",
      [](int d, int q) {
        const auto rule = simplex_rule(d, q);
        return py::make_tuple(points_to_rows(rule.nodes, d), rule.weights);
      },
      py::arg("d"), py::arg("q"), "Returns (nodes, weights).");

  py::class_<PolyCoeffs>(m, "PolyCoeffs")
      .def(py::init([](int p, int d, const Eigen::VectorXd& coeffs,
                       std::optional<Simplex> element) {
             return PolyCoeffs(enumerate_modes(p, d), coeffs, std::move(element));
           }),
           py::arg("p"), py::arg("d"), py::arg("coeffs"), py::arg("element") = py::none())
      .def_property_readonly("coeffs", &PolyCoeffs::coeffs)
      .def_property_readonly("dim", &PolyCoeffs::dim)
      .def_property_readonly("degree", &PolyCoeffs::degree)
      .def_property_readonly("element", &PolyCoeffs::element)
      .def_property_readonly("modes", [](const PolyCoeffs& c) { return mode_list(c.spec()); })
      .def("__call__", [](const PolyCoeffs& c, const Point& x) { return eval(c, x); });

  m.def(
      "expand",
      [](const std::function<double(const Point&)>& f, int p, int d,
         std::optional<Simplex> element) { return expand(f, enumerate_modes(p, d), element); },
      py::arg("f"), py::arg("p"), py::arg("d"), py::arg("element") = py::none());
  m.def("project", &project, py::arg("c"), py::arg("n"));
  m.def("deflate", &deflate, py::arg("c"), py::arg("n"));
  m.def("l2_norm_sq", &l2_norm_sq, py::arg("c"));
  m.def("eval", &eval, py::arg("c"), py::arg("x"));

  m.def(
      "assemble_face_mass",
      [](int p, int n, const Simplex& s, const Face& f) {
        const auto l = assemble_face_mass(p, n, s, f);
        std::vector<std::vector<int>> modes;
        for (std::size_t r = 0; r < l.size(); ++r)
          modes.push_back(l.mode(r).components());
        return py::make_tuple(l.entries, modes);
      },
      py::arg("p"), py::arg("n"), py::arg("simplex"), py::arg("face"),
      "Returns (matrix, modes) for the deflated modes.");
  m.def(
      "block_eigenvalue_closed_form",
      [](const std::vector<int>& leading, int p, int n, int d) {
        return block_eigenvalue_closed_form(leading, p, n, d);
      },
      py::arg("leading"), py::arg("p"), py::arg("n"), py::arg("d"));
  m.def(
      "spectral_radius_numeric",
      [](const Eigen::MatrixXd& matrix, double tol, int max_iterations) {
        const auto e = spectral_radius_numeric(matrix, tol, max_iterations);
        return py::make_tuple(e.rho, e.vector);
      },
      py::arg("matrix"), py::arg("tol") = 1e-12, py::arg("max_iterations") = 100000,
      "Returns (rho, eigenvector).");
  m.def("reference_constant", &reference_constant, py::arg("p"), py::arg("n"), py::arg("d"));
  m.def("sharp_constant", &sharp_constant, py::arg("p"), py::arg("n"), py::arg("simplex"),
        py::arg("face"));
  m.def("wh_constant", &wh_constant, py::arg("p"), py::arg("simplex"), py::arg("face"));
  m.def(
      "extremal_polynomial",
      [](int p, int n, const Simplex& s, const Face& f) {
        return report_dict(extremal_polynomial(p, n, s, f));
      },
      py::arg("p"), py::arg("n"), py::arg("simplex"), py::arg("face"));
  m.def(
      "verify_inequality",
      [](const PolyCoeffs& c, int n, const Simplex& s, const Face& f) {
        const auto r = verify_inequality(c, n, s, f);
        py::dict d;
        d["lhs"] = r.lhs;
        d["rhs"] = r.rhs;
        d["ratio"] = r.ratio;
        d["holds"] = r.holds;
        return d;
      },
      py::arg("c"), py::arg("n"), py::arg("simplex"), py::arg("face"));
  m.def(
      "random_ratio_scan",
      [](int p, int n, const Simplex& s, const Face& f, std::size_t count, std::uint64_t seed) {
        const auto r = random_ratio_scan(p, n, s, f, count, seed);
        return py::make_tuple(r.max_ratio, r.argmax, r.samples);
      },
      py::arg("p"), py::arg("n"), py::arg("simplex"), py::arg("face"), py::arg("count"),
      py::arg("seed") = 1, "Returns (max_ratio, argmax, samples).");
}
