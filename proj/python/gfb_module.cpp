// python bindings for the core library; built as gfb._core
#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gfb/io.hpp"
#include "gfb/version.hpp"

namespace py = pybind11;
using namespace gfb;

namespace {

std::optional<Transversal> parse_convention(const std::optional<std::string>& s) {
  if (!s) return std::nullopt;
  if (*s == "lex") return Transversal::Lex;
  if (*s == "negative") return Transversal::Negative;
  throw SchemaError("unknown transversal convention: " + *s);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "filter banks over countable discrete abelian groups";
  m.attr("__version__") = kVersion;

  // exception translators are tried most-recently-registered first, so the
  // base class goes first and the most derived type last
  auto err = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  auto invalid = py::register_exception<InvalidArgument>(m, "InvalidArgumentError", err);
  py::register_exception<MathError>(m, "MathError", err);
  py::register_exception<SchemaError>(m, "SchemaError", invalid);

  py::class_<Group>(m, "Group")
      .def_static("finite", &Group::finite, py::arg("orders"))
      .def_static("integers", &Group::integers, py::arg("rank"))
      .def_property_readonly("is_finite", &Group::is_finite)
      .def_property_readonly("dim", &Group::dim)
      .def_property_readonly("orders", &Group::orders)
      .def_property_readonly("size", &Group::size)
      .def("reduce", &Group::reduce, py::arg("n"))
      .def("add", &Group::add, py::arg("a"), py::arg("b"))
      .def("sub", &Group::sub, py::arg("a"), py::arg("b"))
      .def("neg", &Group::neg, py::arg("a"))
      .def("zero", &Group::zero)
      .def("index_of", &Group::index_of, py::arg("n"))
      .def("element_at", &Group::element_at, py::arg("idx"))
      .def(py::self == py::self)
      .def("__repr__", &Group::describe);

  py::class_<DualPoint>(m, "DualPoint")
      .def_static("finite", &DualPoint::finite, py::arg("group"), py::arg("xi"))
      .def_static("torus", &DualPoint::torus, py::arg("group"), py::arg("theta"))
      .def_property_readonly("group", &DualPoint::group)
      .def_property_readonly("is_finite", &DualPoint::is_finite)
      .def_property_readonly("coords", &DualPoint::coords)
      .def_property_readonly("theta", &DualPoint::theta);

  m.def("character",
        py::overload_cast<const Group&, const Coords&, const DualPoint&>(&character),
        py::arg("group"), py::arg("n"), py::arg("xi"));

  py::class_<Signal>(m, "Signal")
      .def(py::init<Group>(), py::arg("group"))
      .def_static("delta", &Signal::delta, py::arg("group"), py::arg("at"))
      .def_static("from_pairs", &Signal::from_pairs, py::arg("group"), py::arg("terms"))
      .def_property_readonly("group", &Signal::group)
      .def("at", &Signal::at, py::arg("n"))
      .def("support", &Signal::support)
      .def("support_size", &Signal::support_size)
      .def("norm2", &Signal::norm2)
      .def("is_zero", &Signal::is_zero, py::arg("tol") = 0.0)
      .def("accumulate", &Signal::accumulate, py::arg("n"), py::arg("v"),
           py::return_value_policy::reference_internal)
      .def("items",
           [](const Signal& x) {
             std::vector<std::pair<Coords, Complex>> out;
             x.for_each([&](const Coords& n, Complex v) { out.emplace_back(n, v); });
             return out;
           })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def("__rmul__", [](const Signal& x, Complex c) { return c * x; })
      .def("__repr__", [](const Signal& x) {
        return "Signal(" + x.group().describe() + ", support=" +
               std::to_string(x.support_size()) + ")";
      });

  m.def("inner", &inner, py::arg("x"), py::arg("y"));
  m.def("distance", &distance, py::arg("x"), py::arg("y"));
  m.def("convolve", &convolve, py::arg("x"), py::arg("y"));
  m.def("translate", &translate, py::arg("x"), py::arg("m"));
  m.def("involution", &involution, py::arg("x"));

  py::class_<Spectrum>(m, "Spectrum")
      .def_readonly("group", &Spectrum::group)
      .def_readonly("values", &Spectrum::values)
      .def("at", py::overload_cast<const Coords&>(&Spectrum::at, py::const_),
           py::arg("xi"));
  m.def("fourier", &fourier, py::arg("x"));
  m.def("inverse_fourier", &inverse_fourier, py::arg("sx"));

  py::enum_<Transversal>(m, "Transversal")
      .value("LEX", Transversal::Lex)
      .value("NEGATIVE", Transversal::Negative);

  py::class_<Lattice>(m, "Lattice")
      .def_static("from_generators", &Lattice::from_generators, py::arg("group"),
                  py::arg("generators"), py::arg("convention") = Transversal::Lex)
      .def_static("from_matrix", &Lattice::from_matrix, py::arg("matrix"),
                  py::arg("convention") = Transversal::Lex)
      .def_static("quincunx", &Lattice::quincunx, py::arg("p"), py::arg("q"),
                  py::arg("convention") = Transversal::Lex)
      .def_property_readonly("group", &Lattice::group)
      .def_property_readonly("index", &Lattice::index)
      .def_property_readonly("transversal", &Lattice::transversal)
      .def("contains", &Lattice::contains, py::arg("n"))
      .def("coset_of", &Lattice::coset_of, py::arg("n"))
      .def_property_readonly("sub_size", &Lattice::sub_size)
      .def_property_readonly("members", &Lattice::members)
      .def_property_readonly("annihilator", &Lattice::annihilator)
      .def_property_readonly("dual_reps", &Lattice::dual_reps)
      .def("__repr__", [](const Lattice& l) {
        return "Lattice(" + l.group().describe() + ", index=" +
               std::to_string(l.index()) + ")";
      });

  m.def("downsample", &downsample, py::arg("x"), py::arg("m"));
  m.def("expand", &expand, py::arg("c"), py::arg("m"));
  m.def("m_fourier_at", &m_fourier_at, py::arg("c"), py::arg("m"), py::arg("xi"));

  py::class_<FilterBank>(m, "FilterBank")
      .def(py::init<Lattice, std::vector<Signal>, std::vector<Signal>>(),
           py::arg("lattice"), py::arg("analysis"),
           py::arg("synthesis") = std::vector<Signal>{})
      .def_property_readonly("lattice", &FilterBank::lattice)
      .def_property_readonly("group", &FilterBank::group)
      .def_property_readonly("channels", &FilterBank::channels)
      .def_property_readonly("analysis", &FilterBank::analysis)
      .def_property_readonly("synthesis", &FilterBank::synthesis)
      .def_property_readonly("has_synthesis", &FilterBank::has_synthesis)
      .def("__repr__", [](const FilterBank& b) {
        return "FilterBank(" + b.group().describe() + ", channels=" +
               std::to_string(b.channels()) + ", index=" +
               std::to_string(b.lattice().index()) + ")";
      });

  py::class_<BankOutput>(m, "BankOutput")
      .def_readonly("subbands", &BankOutput::subbands)
      .def_readonly("output", &BankOutput::output);

  m.def("apply_filter_bank", &apply_filter_bank, py::arg("x"), py::arg("bank"));
  m.def("pr_residual", &pr_residual, py::arg("bank"));
  m.def("check_perfect_reconstruction", &check_perfect_reconstruction,
        py::arg("bank"), py::arg("tol") = 1e-10);
  m.def("pr_counterexample", &pr_counterexample, py::arg("bank"),
        py::arg("tol") = 1e-10);
  m.def("quincunx_lambda", &quincunx_lambda, py::arg("x"), py::arg("p"), py::arg("q"));

  py::class_<FrameReport>(m, "FrameReport")
      .def_readonly("channels", &FrameReport::channels)
      .def_readonly("index", &FrameReport::index)
      .def_readonly("is_bessel", &FrameReport::is_bessel)
      .def_readonly("is_frame", &FrameReport::is_frame)
      .def_readonly("is_tight", &FrameReport::is_tight)
      .def_readonly("is_riesz", &FrameReport::is_riesz)
      .def_readonly("lower", &FrameReport::lower)
      .def_readonly("upper", &FrameReport::upper)
      .def_readonly("argmin", &FrameReport::argmin)
      .def_readonly("argmax", &FrameReport::argmax)
      .def_readonly("rank_min", &FrameReport::rank_min)
      .def_readonly("tight_deviation", &FrameReport::tight_deviation)
      .def_readonly("min_abs_det", &FrameReport::min_abs_det)
      .def_readonly("method", &FrameReport::method)
      .def("__repr__", [](const FrameReport& r) {
        return "FrameReport(A=" + std::to_string(r.lower) + ", B=" +
               std::to_string(r.upper) + ", frame=" + (r.is_frame ? "True" : "False") +
               ")";
      });

  m.def("frame_bounds", &frame_bounds, py::arg("bank"), py::arg("grid") = 64);
  m.def("is_tight",
        py::overload_cast<const FilterBank&, double, int>(&is_tight),
        py::arg("bank"), py::arg("tol") = kTightTol, py::arg("grid") = 64);
  m.def("is_riesz_basis", &is_riesz_basis, py::arg("bank"),
        py::arg("tol") = kRieszDetTol, py::arg("grid") = 64);
  m.def("canonical_dual", &canonical_dual, py::arg("bank"));

  py::class_<DualReport>(m, "DualReport")
      .def_readonly("holds", &DualReport::holds)
      .def_readonly("residual", &DualReport::residual)
      .def_readonly("lower", &DualReport::lower)
      .def_readonly("upper", &DualReport::upper)
      .def_readonly("method", &DualReport::method);

  m.def("check_dual_frames", &check_dual_frames, py::arg("bank"),
        py::arg("tol") = 1e-9, py::arg("grid") = 64);
  m.def("frame_operator_oracle", &frame_operator_oracle, py::arg("bank"));

  m.def("w_orthogonality_residual", &w_orthogonality_residual, py::arg("m"));
  m.def("alias_identity_residual", &alias_identity_residual, py::arg("x"), py::arg("m"));
  m.def("check_mod_polyphase_relation", &check_mod_polyphase_relation, py::arg("bank"));

  // JSON bridge: the same documents the command-line tool reads and writes
  m.def(
      "dumps_bank",
      [](const FilterBank& bank) { return io::dump(io::bank_to_json(bank)); },
      py::arg("bank"));
  m.def(
      "loads_bank",
      [](const std::string& text, const std::optional<std::string>& convention) {
        return io::bank_from_json(io::parse_text(text), parse_convention(convention));
      },
      py::arg("text"), py::arg("convention") = std::nullopt);
  m.def(
      "dumps_signal",
      [](const Signal& x) { return io::dump(io::signal_document(x)); },
      py::arg("x"));
  m.def(
      "loads_signal",
      [](const std::string& text) {
        return io::signal_from_document(io::parse_text(text));
      },
      py::arg("text"));
  m.def(
      "dumps_frame_report",
      [](const FrameReport& r) { return io::dump(io::frame_report_to_json(r)); },
      py::arg("report"));
}
