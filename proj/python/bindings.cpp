#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cotton/app/acceptance.hpp"
#include "cotton/app/commands.hpp"
#include "cotton/app/spec_files.hpp"
#include "cotton/cotton_algebra.hpp"
#include "cotton/curvature.hpp"
#include "cotton/errors.hpp"
#include "cotton/geometry.hpp"
#include "cotton/parser.hpp"

namespace py = pybind11;
using namespace cotton;

namespace {

py::object to_py(const Rational& r) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(r.to_string());
}

py::object to_py(double d) { return py::float_(d); }

// Accepts int, Fraction, str ("3/4", "0.25") or float; floats go through
// their shortest repr, so 0.1 becomes 1/10.
Rational to_rational(py::handle h) {
  if (py::isinstance<py::float_>(h)) return Rational::parse(py::repr(h).cast<std::string>());
  return Rational::parse(py::str(h).cast<std::string>());
}

template <class S>
std::vector<S> point_from(const py::sequence& seq) {
  std::vector<S> out;
  for (auto item : seq) out.push_back(scalar_from<S>(to_rational(item)));
  return out;
}

template <class S>
py::object nested(const Tensor<S>& t, std::size_t slot, std::size_t offset) {
  if (slot == t.rank()) return to_py(t.at_flat(offset));
  py::list out;
  std::size_t stride = 1;
  for (std::size_t s = slot + 1; s < t.rank(); ++s) stride *= t.dim();
  for (std::size_t i = 0; i < t.dim(); ++i) out.append(nested(t, slot + 1, offset + i * stride));
  return out;
}

template <class S>
py::object tensor_py(const JetTensor<S>& t) {
  return nested(tensor_values(t), 0, 0);
}

bool is_exact(const std::string& mode) {
  if (mode == "exact") return true;
  if (mode == "float") return false;
  throw InputError("mode must be 'exact' or 'float', got '" + mode + "'");
}

template <class S>
py::dict curvature_impl(const PolynomialMetric& metric, const py::sequence& point) {
  const auto chart = MetricChart<S>::from_polynomials(metric);
  const auto p = point_from<S>(point);
  const PointCurvature<S> pc = curvature_at<S>(chart, p, kDefaultJetOrder);
  py::dict d;
  d["christoffel"] = tensor_py(pc.christoffel);
  d["riemann"] = tensor_py(pc.riemann);
  d["ricci"] = tensor_py(pc.ricci);
  d["scalar"] = to_py(pc.scalar.value());
  d["schouten"] = tensor_py(pc.schouten);
  d["nabla_schouten"] = tensor_py(pc.nabla_schouten);
  d["cotton"] = tensor_py(pc.cotton);
  d["nabla_cotton"] = tensor_py(*pc.nabla_cotton);
  d["weyl"] = metric.dim() >= 3 ? tensor_py(weyl(pc.metric, pc.riemann, pc.schouten)) : py::none();
  return d;
}

template <class S>
py::dict classify_impl(const PolynomialMetric& metric, const py::sequence& points, double tolerance,
                       bool allow_skip) {
  const auto chart = MetricChart<S>::from_polynomials(metric);
  std::vector<std::vector<S>> pts;
  for (auto p : points) pts.push_back(point_from<S>(py::reinterpret_borrow<py::sequence>(p)));
  ClassifyOptions opts;
  opts.tolerance = tolerance;
  opts.allow_skip = allow_skip;
  const ChartClassification c = classify_chart(chart, pts, opts);
  py::list evidence;
  for (const auto& e : c.evidence) {
    py::dict r;
    r["point"] = e.point;
    r["skipped"] = e.skipped;
    r["note"] = e.note;
    r["cotton_norm"] = e.cotton_norm;
    r["nabla_cotton_norm"] = e.nabla_cotton_norm;
    r["cotton_vanishes"] = e.cotton_vanishes;
    r["nabla_cotton_vanishes"] = e.nabla_cotton_vanishes;
    evidence.append(r);
  }
  py::dict d;
  d["verdict"] = to_string(c.verdict);
  d["sample_count"] = c.sample_count;
  d["witness"] = c.witness ? py::cast(*c.witness) : py::none();
  d["evidence"] = evidence;
  return d;
}

template <class S>
py::dict decompose_impl(const py::sequence& gram, const py::sequence& tensor) {
  std::vector<S> g;
  for (auto row : gram) {
    for (auto x : py::reinterpret_borrow<py::sequence>(row)) g.push_back(scalar_from<S>(to_rational(x)));
  }
  if (g.size() != 9) throw InputError("inner product must be a 3x3 nested sequence");
  Array27<S> t{};
  std::size_t k = 0;
  for (auto a : tensor) {
    for (auto b : py::reinterpret_borrow<py::sequence>(a)) {
      for (auto c : py::reinterpret_borrow<py::sequence>(b)) {
        if (k == 27) throw InputError("tensor must be a 3x3x3 nested sequence");
        t[k++] = scalar_from<S>(to_rational(c));
      }
    }
  }
  if (k != 27) throw InputError("tensor must be a 3x3x3 nested sequence");
  const InnerProduct3<S> ip{Matrix<S>(3, 3, g)};
  const CottonDecomposition<S> dec = decompose(CottonLike<S>(t, ip), ip);
  py::list kernel;
  for (const auto& v : dec.kernel.basis) kernel.append(py::make_tuple(to_py(v[0]), to_py(v[1]), to_py(v[2])));
  py::dict d;
  d["kind"] = to_string(dec.kind);
  d["kernel"] = kernel;
  if (dec.kind == DecompositionKind::RankOneKernel) {
    d["u"] = dec.u;
    d["v"] = dec.v;
    d["a"] = dec.a;
    d["residual"] = dec.residual;
    d["coefficient"] = to_py(dec.coefficient);
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Curvature, Cotton tensor and ECS classification toolkit";

  auto& base = py::register_exception<Error>(m, "CottonError", PyExc_RuntimeError);
  py::register_exception<InputError>(m, "InputError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());

  py::class_<PolynomialMetric>(m, "Metric")
      .def_static(
          "from_spec", [](const std::string& text) { return app::parse_metric_spec(text).metric; },
          py::arg("text"), "Parse a metric spec document.")
      .def_static(
          "from_components",
          [](const std::vector<std::string>& coords, const std::map<std::string, std::string>& components) {
            std::map<std::pair<std::size_t, std::size_t>, Polynomial> comps;
            for (const auto& [key, expr] : components) {
              const auto comma = key.find(',');
              if (comma == std::string::npos) throw InputError("component key must look like 'i,j': " + key);
              auto index = [&](const std::string& name) {
                for (std::size_t i = 0; i < coords.size(); ++i) {
                  if (coords[i] == name) return i;
                }
                throw InputError("unknown coordinate '" + name + "'");
              };
              const std::size_t i = index(key.substr(0, comma));
              const std::size_t j = index(key.substr(comma + 1));
              const auto ij = std::make_pair(std::min(i, j), std::max(i, j));
              if (comps.count(ij)) throw InputError("component " + key + " given twice");
              comps.emplace(ij, parse_expr(expr, coords));
            }
            return PolynomialMetric(coords, comps);
          },
          py::arg("coords"), py::arg("components"))
      .def_static(
          "model", [](const std::string& a) { return build_model(ModelSpec::parse(a)); }, py::arg("a") = "0",
          "The model metric (x^3 + a(t) x) dt^2 + dt ds + dx^2.")
      .def_property_readonly("coords", &PolynomialMetric::coords)
      .def_property_readonly("dim", &PolynomialMetric::dim)
      .def("component", [](const PolynomialMetric& g, std::size_t i, std::size_t j) {
        if (i >= g.dim() || j >= g.dim()) throw py::index_error("component index out of range");
        return g.component(i, j).to_string();
      })
      .def("to_spec", [](const PolynomialMetric& g) { return app::write_metric_spec(g); })
      .def("__repr__", [](const PolynomialMetric& g) {
        std::ostringstream s;
        s << "<Metric dim=" << g.dim() << ">";
        return s.str();
      });

  m.def(
      "curvature",
      [](const PolynomialMetric& metric, const py::sequence& point, const std::string& mode) {
        return is_exact(mode) ? curvature_impl<Rational>(metric, point) : curvature_impl<double>(metric, point);
      },
      py::arg("metric"), py::arg("point"), py::arg("mode") = "exact",
      "Christoffel symbols, curvature, Schouten, Cotton, nabla Cotton and Weyl at a point. "
      "Covariant derivatives put the derivative index first.");

  m.def(
      "classify",
      [](const PolynomialMetric& metric, const py::sequence& points, const std::string& mode, double tolerance,
         bool allow_skip) {
        return is_exact(mode) ? classify_impl<Rational>(metric, points, tolerance, allow_skip)
                              : classify_impl<double>(metric, points, tolerance, allow_skip);
      },
      py::arg("metric"), py::arg("points"), py::arg("mode") = "exact", py::arg("tolerance") = 1e-9,
      py::arg("allow_skip") = false, "Chart-local classification from the given sample points.");

  m.def(
      "decompose",
      [](const py::sequence& inner_product, const py::sequence& tensor, const std::string& mode) {
        return is_exact(mode) ? decompose_impl<Rational>(inner_product, tensor)
                              : decompose_impl<double>(inner_product, tensor);
      },
      py::arg("inner_product"), py::arg("tensor"), py::arg("mode") = "exact",
      "Kernel and (u, v, a) decomposition of a Cotton-like tensor T[i][j][k].");

  m.def(
      "verify_model",
      [](const std::string& a, const py::sequence& points) {
        std::vector<std::vector<Rational>> pts;
        for (auto p : points) pts.push_back(point_from<Rational>(py::reinterpret_borrow<py::sequence>(p)));
        py::list out;
        for (const auto& c : verify_model(ModelSpec::parse(a), pts)) {
          out.append(py::make_tuple(c.name, c.passed, c.detail));
        }
        return out;
      },
      py::arg("a"), py::arg("points"));

  m.def(
      "selftest",
      [](const std::string& mode, std::uint64_t seed) {
        app::AcceptanceOptions opts;
        opts.exact = is_exact(mode);
        opts.seed = seed;
        std::vector<app::CriterionResult> results;
        {
          py::gil_scoped_release release;
          results = app::run_acceptance(opts, nullptr);
        }
        py::list out;
        for (const auto& r : results) {
          py::dict d;
          d["id"] = r.id;
          d["name"] = r.name;
          d["passed"] = r.passed;
          d["detail"] = r.detail;
          d["seconds"] = r.seconds;
          out.append(d);
        }
        return out;
      },
      py::arg("mode") = "float", py::arg("seed") = app::kDefaultAcceptanceSeed);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        int code = 0;
        {
          py::gil_scoped_release release;
          code = app::run_cli(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line tool in-process; returns (exit_code, stdout, stderr).");
}
