#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lensspec/errors.hpp"
#include "lensspec/lattice.hpp"
#include "lensspec/lens.hpp"
#include "lensspec/oracle.hpp"
#include "lensspec/search.hpp"
#include "lensspec/spectrum.hpp"

namespace py = pybind11;
using namespace lensspec;

namespace {

py::int_ to_py(const BigCount& v) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(v.str().c_str(), nullptr, 10));
}

spectrum::Sign parse_sign(const std::string& s) {
  if (s == "+" || s == "plus") return spectrum::Sign::Plus;
  if (s == "-" || s == "minus") return spectrum::Sign::Minus;
  throw py::value_error("sign must be '+' or '-'");
}

lens::IsometryMode parse_isometry_mode(const std::string& s) {
  if (s == "any") return lens::IsometryMode::Any;
  if (s == "preserving") return lens::IsometryMode::Preserving;
  if (s == "reversing") return lens::IsometryMode::Reversing;
  throw py::value_error("mode must be any, preserving or reversing");
}

lens::SpinLensSpace make_space(std::int64_t q, std::vector<std::int64_t> s, std::optional<std::string> spin) {
  auto params = lens::make_lens(q, std::move(s));
  if (spin) return lens::make_spin_lens(std::move(params), lens::parse_spin_tag(*spin));
  if (q % 2 == 1) return lens::make_spin_lens(std::move(params), lens::SpinLabel::unique());
  throw NoSpinStructure("q is even: pass spin='h0' or spin='h1'");
}

py::object witness_dict(const std::optional<lens::IsometryWitness>& w) {
  if (!w) return py::none();
  py::dict d;
  d["ell"] = w->ell;
  d["sigma"] = w->sigma;
  d["eps"] = w->eps;
  d["orientation"] = w->orientation;
  d["spin_shift"] = w->spin_shift ? py::object(py::int_(*w->spin_shift)) : py::object(py::none());
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Dirac spectra and isospectral families of spin lens spaces";

  auto base = py::register_exception<Error>(m, "LensspecError", PyExc_ValueError);
  py::register_exception<NoSpinStructure>(m, "NoSpinStructure", base.ptr());
  py::register_exception<NotCoprime>(m, "NotCoprime", base.ptr());
  py::register_exception<VerificationFailed>(m, "VerificationFailed", base.ptr());
  py::register_exception<FormatError>(m, "FormatError", base.ptr());

  py::class_<lens::SpinLensSpace>(m, "SpinLensSpace")
      .def(py::init(&make_space), py::arg("q"), py::arg("s"), py::arg("spin") = py::none())
      .def_property_readonly("q", &lens::SpinLensSpace::q)
      .def_property_readonly("m", &lens::SpinLensSpace::m)
      .def_property_readonly("s", [](const lens::SpinLensSpace& x) { return x.lens.s(); })
      .def_property_readonly("spin", [](const lens::SpinLensSpace& x) { return lens::spin_tag(x.spin); })
      .def("__eq__", [](const lens::SpinLensSpace& a, const lens::SpinLensSpace& b) { return a == b; })
      .def("__repr__", [](const lens::SpinLensSpace& x) { return lens::to_string(x); });

  m.def("spin_structures", [](std::int64_t q, std::vector<std::int64_t> s) {
    std::vector<std::string> out;
    for (const auto& label : lens::spin_structures(lens::make_lens(q, std::move(s)))) out.push_back(lens::spin_tag(label));
    return out;
  });

  m.def(
      "multiplicity",
      [](const lens::SpinLensSpace& x, std::int64_t k, const std::string& sign) {
        return to_py(spectrum::multiplicity(x, k, parse_sign(sign)));
      },
      py::arg("x"), py::arg("k"), py::arg("sign"));

  m.def(
      "spectrum_table",
      [](const lens::SpinLensSpace& x, std::int64_t k_max) {
        py::list rows;
        for (const auto& r : spectrum::spectrum_table(x, k_max).rows) {
          rows.append(py::make_tuple(r.k, r.value2, to_py(r.minus), to_py(r.plus)));
        }
        return rows;
      },
      py::arg("x"), py::arg("k_max"), "Rows (k, 2*lambda_k, mult(-lambda_k), mult(+lambda_k)).");

  m.def(
      "reduced_counts",
      [](const lens::SpinLensSpace& x) {
        const auto fp = spectrum::fingerprint(x);
        py::list rows;
        for (int e = 0; e < 2; ++e) {
          py::list row;
          for (const auto& c : fp.table.row(e)) row.append(to_py(c));
          rows.append(row);
        }
        return rows;
      },
      py::arg("x"));

  m.def("fingerprint_digest", [](const lens::SpinLensSpace& x) { return spectrum::fingerprint(x).digest(); });
  m.def("dirac_isospectral", py::overload_cast<const lens::SpinLensSpace&, const lens::SpinLensSpace&>(
                                 &spectrum::dirac_isospectral));
  m.def("inverse_isospectral", py::overload_cast<const lens::SpinLensSpace&, const lens::SpinLensSpace&>(
                                   &spectrum::inverse_isospectral));

  m.def(
      "find_isometry",
      [](const lens::SpinLensSpace& a, const lens::SpinLensSpace& b, const std::string& mode) {
        return witness_dict(lens::find_isometry(a, b, parse_isometry_mode(mode)));
      },
      py::arg("a"), py::arg("b"), py::arg("mode") = "any");

  m.def(
      "canonical_form",
      [](const lens::SpinLensSpace& x, const std::string& mode) {
        return lens::representative(lens::canonical_key(x, search::parse_mode(mode)));
      },
      py::arg("x"), py::arg("mode") = "unoriented");

  m.def(
      "run_census",
      [](int dimension, std::int64_t q_min, std::int64_t q_max, const std::string& mode, bool tables) {
        search::CensusOptions options;
        options.keep_tables = tables;
        std::vector<search::CensusResult> results;
        {
          py::gil_scoped_release release;
          results = search::run_census(dimension, q_min, q_max, search::parse_mode(mode), options);
        }
        return search::dump_results(results);
      },
      py::arg("dimension"), py::arg("q_min"), py::arg("q_max"), py::arg("mode") = "unoriented",
      py::arg("tables") = false, "Census as the JSON document written by save_results.");

  m.def("family_thm51", &search::family_thm51, py::arg("r"));
  m.def("family_thm52", &search::family_thm52, py::arg("t"));
  m.def("family_thm53", &search::family_thm53, py::arg("r"), py::arg("t") = 1, py::arg("experimental") = false);

  m.def(
      "verify_family",
      [](const std::vector<lens::SpinLensSpace>& members, const std::string& forbid) {
        search::Forbid f = search::Forbid::None;
        if (forbid == "any") f = search::Forbid::AnyIsometry;
        else if (forbid == "spin") f = search::Forbid::SpinIsometry;
        else if (forbid != "none") throw py::value_error("forbid must be none, any or spin");
        return search::verify_family(members, f).checks;
      },
      py::arg("members"), py::arg("forbid") = "any");

  m.def(
      "oracle_compare",
      [](const lens::SpinLensSpace& x, std::int64_t k_max, double tol) {
        const auto r = oracle::oracle_compare(x, k_max, tol);
        py::dict d;
        d["max_delta"] = r.max_delta;
        d["max_imag"] = r.max_imag;
        d["pass"] = r.pass;
        d["consistent"] = r.consistent;
        return d;
      },
      py::arg("x"), py::arg("k_max") = 40, py::arg("tol") = 1e-6);
}
