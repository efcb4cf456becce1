#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "diffrep/constructions.hpp"
#include "diffrep/continuous.hpp"
#include "diffrep/energy.hpp"
#include "diffrep/error.hpp"
#include "diffrep/io.hpp"
#include "diffrep/repfn.hpp"
#include "diffrep/verify.hpp"

namespace py = pybind11;
using namespace diffrep;

namespace {

// Python values cross the boundary as JSON so element, set and report
// validation stays in one place.
Json to_cpp_json(const py::handle& obj) {
  const auto text = py::module_::import("json").attr("dumps")(obj).cast<std::string>();
  return Json::parse(text);
}

py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

py::object to_py(const BigInt& v) { return py::module_::import("builtins").attr("int")(to_string(v)); }

py::object to_py(const Rational& v) { return py::module_::import("fractions").attr("Fraction")(to_string(v)); }

// Accepts int, str ("p/q" or a finite decimal) or fractions.Fraction.
Rational to_rational(const py::handle& obj) { return parse_rational(py::str(obj).cast<std::string>()); }

std::vector<std::int64_t> values_of(const GSet& s) {
  std::vector<std::int64_t> out;
  for (Element e : s.elements()) out.push_back(s.group().signed_value(e));
  std::sort(out.begin(), out.end());
  return out;
}

GSet make_set(const GroupSpec& g, const py::iterable& elements) {
  Json j{{"group", to_json(g)}, {"elements", to_cpp_json(py::list(elements))}};
  return set_from_json(j);
}

SweepOptions sweep_options(unsigned jobs) {
  SweepOptions o;
  o.jobs = jobs;
  return o;
}

py::object report(const CheckReport& r) { return to_py(to_json(r)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Difference sets, representation functions, higher energies and clique counts.";

  py::register_exception<Error>(m, "DiffrepError", PyExc_ValueError);

  py::class_<GroupSpec>(m, "Group")
      .def_static("cyclic", &GroupSpec::cyclic, py::arg("order"))
      .def_static("integer_window", &GroupSpec::integer_window, py::arg("halfwidth"))
      .def_static("product", &GroupSpec::product, py::arg("orders"))
      .def_property_readonly("carrier_size", &GroupSpec::carrier_size)
      .def("to_dict", [](const GroupSpec& g) { return to_py(to_json(g)); })
      .def("__eq__", [](const GroupSpec& a, const GroupSpec& b) { return a == b; })
      .def("__repr__", &GroupSpec::describe);

  py::class_<GSet>(m, "Set")
      .def(py::init(&make_set), py::arg("group"), py::arg("elements"))
      .def_static("from_dict", [](const py::dict& d) { return set_from_json(to_cpp_json(d)); })
      .def_property_readonly("group", &GSet::group)
      .def("values", &values_of, "Sorted elements in signed form (residues in [-n/2, n/2) for cyclic groups).")
      .def("to_dict", [](const GSet& s) { return to_py(to_json(s)); })
      .def("translate",
           [](const GSet& s, const py::object& d) { return s.translate(element_from_json(s.group(), to_cpp_json(d))); })
      .def("intersect", &GSet::intersect)
      .def("__len__", &GSet::size)
      .def("__contains__",
           [](const GSet& s, const py::object& e) {
             try {
               return s.contains(element_from_json(s.group(), to_cpp_json(e)));
             } catch (const Error&) {
               return false;
             }
           })
      .def("__eq__", [](const GSet& a, const GSet& b) { return a == b; })
      .def("__repr__", [](const GSet& s) { return "Set(" + s.group().describe() + ", " + to_json(s)["elements"].dump() + ")"; });

  m.def("centered_interval", &centered_interval, py::arg("group"), py::arg("size"));
  m.def("is_symmetric_with_zero", &is_symmetric_with_zero);
  m.def("symmetric_sets", [](const GroupSpec& g) { return enumerate_symmetric_sets(g); }, py::arg("group"));

  m.def("diff_set", &diff_set);
  m.def(
      "rep_table",
      [](const GSet& s) {
        py::dict out;
        rep_table(s).for_each_nonzero([&](Element d, std::uint64_t c) { out[to_py(element_to_json(s.group(), d))] = c; });
        return out;
      },
      "Nonzero values of r_A as {difference: count}.");
  m.def("mu", [](const GSet& s) { return mu(s); });
  m.def(
      "mu_k",
      [](const GSet& s, int k) -> py::object {
        const auto r = mu_k(s, k);
        if (!r.found) return py::none();
        return py::int_(r.value);
      },
      py::arg("set"), py::arg("k"));
  m.def("support_size", [](const GSet& s, int k) { return support_size_higher(s, k); }, py::arg("set"), py::arg("k"));
  m.def("higher_rep_mass", [](const GSet& s, int k) { return to_py(higher_rep(s, k).total_mass()); }, py::arg("set"),
        py::arg("k"));

  m.def(
      "energy",
      [](const GSet& s, int k, std::optional<int> l, bool via_l) {
        if (!l) return to_py(energy_k(s, k));
        return to_py(energy_kl(s, k, *l, via_l ? EnergySide::via_l : EnergySide::via_k).value);
      },
      py::arg("set"), py::arg("k"), py::arg("l") = py::none(), py::arg("via_l") = false,
      "E_k(A), or E_{k,l}(A) evaluated on the chosen side of the commutation identity.");
  m.def(
      "t_count", [](const GSet& d, const GSet& a, int k, unsigned jobs) { return to_py(t_count(d, a, k, jobs).value); },
      py::arg("d"), py::arg("a"), py::arg("k"), py::arg("jobs") = 1);
  m.def("t_interval_closed_form", [](std::int64_t m_, int k) { return to_py(t_interval_closed_form(m_, k)); });
  m.def("corollary_bound", [](std::int64_t size_d, int k) { return to_py(corollary_bound(size_d, k)); });
  m.def("dense_bound", [](std::int64_t size_d, const py::object& tau, int k) {
    return to_py(dense_bound(size_d, to_rational(tau), k));
  });

  m.def("verify_id_ax", [](const GSet& a, const GSet& d, int k) { return report(verify_id_ax(a, d, k)); });
  m.def("verify_intopt", [](const GSet& a, const GSet& d, int k) { return report(verify_intopt(a, d, k)); });
  m.def(
      "exhaustive_intopt", [](std::int64_t p, int k_max, unsigned jobs) {
        CheckReport r;
        {
          py::gil_scoped_release release;
          r = exhaustive_intopt(p, k_max, sweep_options(jobs));
        }
        return report(r);
      },
      py::arg("p"), py::arg("k_max"), py::arg("jobs") = 1);
  m.def("majorization_check", [](const GSet& a, const GSet& d) { return report(majorization_check(a, d)); });
  m.def("check_basic_chain", [](const GSet& a, int k) { return report(check_basic_chain(a, k)); });
  m.def("theorem_modp_check", [](const GSet& a, const py::object& delta) {
    return report(theorem_modp_check(a, to_rational(delta)));
  });
  m.def("theorem_extD_check", [](const GSet& a, int k, const py::object& delta) {
    return report(theorem_extD_check(a, k, to_rational(delta)));
  });
  m.def("theorem_arbG_check", [](const GSet& a) { return report(theorem_arbG_check(a)); });
  m.def("corollary_check", [](const GSet& d, int k) { return report(corollary_check(d, k)); });
  m.def("dense_bound_check", [](const GSet& d, int k) { return report(dense_bound_check(d, k)); });
  m.def("replay", [](const py::dict& instance) { return report(replay_check(to_cpp_json(instance))); });

  m.def("sidon", [](std::size_t size) { return sidon_elements(size); }, py::arg("size"));
  m.def("measure0_witness", [](const py::object& eps) { return to_py(to_json(measure0_witness(to_rational(eps)))); });
  m.def("random_set", &random_set, py::arg("group"), py::arg("size"), py::arg("seed"));
  m.def("interval_set", &interval_set, py::arg("group"), py::arg("a"), py::arg("b"));

  py::class_<StepFunction>(m, "StepFunction")
      .def(py::init([](const py::iterable& values) {
             std::vector<Rational> v;
             for (const auto& x : values) v.push_back(to_rational(x));
             return StepFunction(std::move(v));
           }),
           py::arg("values"))
      .def_property_readonly("cells", &StepFunction::cells)
      .def("values", [](const StepFunction& f) {
        py::list out;
        for (const auto& v : f.values()) out.append(to_py(v));
        return out;
      });

  m.def("norms", [](const StepFunction& f) {
    const auto n = norms(f);
    py::dict out;
    out["l1"] = to_py(n.l1);
    out["l2_squared"] = to_py(n.l2_squared);
    out["rho_squared"] = to_py(n.rho_squared);
    out["rho"] = n.rho;
    return out;
  });
  m.def(
      "autocorrelate",
      [](const StepFunction& f) {
        py::list out;
        const PiecewiseLinear g = autocorrelate(f);
        for (const auto& v : g.knots()) out.append(to_py(v));
        return out;
      },
      "Values of f∘f at the knots j/N, j = -N..N.");
  m.def("omega", [](const StepFunction& f, const py::object& delta) { return to_py(omega(f, to_rational(delta))); });
  m.def("continuous_t", [](int k) { return to_py(continuous_t(k)); });
  m.def("theorem_fan_check", [](const StepFunction& f, const py::object& delta) {
    return to_py(to_json(theorem_fan_check(f, to_rational(delta))));
  });
  m.def(
      "omega_k_report",
      [](const StepFunction& f, const py::object& delta, std::optional<int> k) {
        return report(omega_k_report(f, to_rational(delta), k));
      },
      py::arg("f"), py::arg("delta"), py::arg("k") = py::none());
}
