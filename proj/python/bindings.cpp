#include <sstream>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fqlab/cli.hpp"
#include "fqlab/counter.hpp"
#include "fqlab/dynamics.hpp"
#include "fqlab/error.hpp"
#include "fqlab/harness.hpp"
#include "fqlab/poly.hpp"
#include "fqlab/report.hpp"
#include "fqlab/theorems.hpp"
#include "fqlab/zeta.hpp"

namespace py = pybind11;
using namespace fqlab;

namespace {

// Integers cross the boundary as decimal strings.
py::object to_py(const BigInt& v) { return py::module_::import("builtins").attr("int")(v.str()); }

BigInt from_py(const py::object& v) { return BigInt(py::str(v).cast<std::string>()); }

py::list to_py(const std::vector<BigInt>& vs) {
    py::list out;
    for (const auto& v : vs) out.append(to_py(v));
    return out;
}

std::string report_json(const VerificationReport& r) { return to_json(r).dump(); }

std::vector<std::string> reports_json(const std::vector<VerificationReport>& rs) {
    std::vector<std::string> out;
    for (const auto& r : rs) out.push_back(report_json(r));
    return out;
}

CountOptions options(unsigned threads, std::uint64_t budget) {
    CountOptions o;
    o.threads = threads;
    o.budget = budget;
    return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Point counts, zeta reconstruction and verification reports";

    auto base = py::register_exception<Error>(m, "FqlabError");
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<BudgetError>(m, "BudgetError", base.ptr());
    py::register_exception<IntegrityError>(m, "IntegrityError", base.ptr());
    py::register_exception<MathError>(m, "MathError", base.ptr());

    py::class_<CompleteIntersectionSpec>(m, "Spec")
        .def_property_readonly("p", &CompleteIntersectionSpec::p)
        .def_property_readonly("ambient_dim", &CompleteIntersectionSpec::ambient_dim)
        .def_property_readonly("dim", &CompleteIntersectionSpec::dim)
        .def_property_readonly("degrees", &CompleteIntersectionSpec::degrees)
        .def_property_readonly("fingerprint", &CompleteIntersectionSpec::fingerprint)
        .def("to_json", [](const CompleteIntersectionSpec& s) { return serialize_spec(s); })
        .def("__repr__", [](const CompleteIntersectionSpec& s) {
            std::ostringstream os;
            os << "<Spec p=" << s.p() << " N=" << s.ambient_dim() << " r=" << s.r() << " " << s.fingerprint() << ">";
            return os.str();
        });

    m.def("parse_spec", &parse_spec, py::arg("document"));
    m.def("random_ci", [](unsigned N, std::vector<unsigned> degrees, std::uint32_t p, std::uint64_t seed,
                          unsigned probe_depth) { return random_ci(N, degrees, p, seed, probe_depth); },
          py::arg("N"), py::arg("degrees"), py::arg("p"), py::arg("seed"), py::arg("probe_depth") = 2);
    m.def("hyperplane_section", &hyperplane_section, py::arg("spec"), py::arg("coordinate"));

    m.def("count", [](const CompleteIntersectionSpec& s, unsigned ext, unsigned threads, std::uint64_t budget) {
              BigInt c;
              {
                  py::gil_scoped_release release;
                  c = count_projective(s, ext, options(threads, budget)).count;
              }
              return to_py(c);
          },
          py::arg("spec"), py::arg("m"), py::arg("threads") = 1, py::arg("budget") = kDefaultBudget);
    m.def("count_series", [](const CompleteIntersectionSpec& s, unsigned max_m, unsigned threads) {
              return to_py(count_series(s, max_m, options(threads, kDefaultBudget)));
          },
          py::arg("spec"), py::arg("max_m"), py::arg("threads") = 1);
    m.def("count_pn", [](unsigned n, const py::object& q) { return to_py(count_pn(n, from_py(q))); });

    m.def("euler_characteristic", [](unsigned N, const std::vector<unsigned>& d) {
        return to_py(euler_characteristic_ci(N, d));
    });
    m.def("middle_betti", [](unsigned N, const std::vector<unsigned>& d) { return to_py(middle_betti(N, d)); });
    m.def("betti_sum", [](unsigned N, const std::vector<unsigned>& d) { return to_py(betti_sum(N, d)); });
    m.def("genus_formula", [](const std::vector<unsigned>& d) { return to_py(genus_formula(d)); });

    m.def("analyze_middle",
          [](const CompleteIntersectionSpec& s, unsigned max_ext, bool fe, double tol) {
              const auto a = analyze_middle(s, max_ext, CountOptions{}, tol, fe);
              py::dict d;
              d["b"] = a.b;
              d["counts"] = to_py(a.counts);
              d["coefficients"] = to_py(a.poly.coeffs);
              d["functional_equation"] = a.functional_equation;
              d["inputs_used"] = a.inputs_used;
              d["rh_pass"] = a.rh.pass;
              d["max_relative_deviation"] = a.rh.max_relative_deviation;
              py::list preds;
              for (const auto& p : a.predictions) preds.append(py::make_tuple(p.d, to_py(p.predicted), to_py(p.counted)));
              d["predictions"] = preds;
              d["reports"] = reports_json(zeta_reports(s, a, tol));
              return d;
          },
          py::arg("spec"), py::arg("max_ext"), py::arg("fe") = false, py::arg("tol") = kDefaultRhTolerance);

    m.def("check_theorem_a", [](const CompleteIntersectionSpec& s, unsigned ext) {
              const auto N = count_projective(s, ext).count;
              return report_json(check_theorem_a(s, N, ext, middle_betti(s.ambient_dim(), s.degrees())));
          },
          py::arg("spec"), py::arg("m") = 1);
    m.def("check_katz", [](unsigned N, unsigned r, unsigned d, const py::object& betti) {
        return report_json(check_katz_betti_bounds(N, r, d, from_py(betti)));
    });
    m.def("genus_two_absent", [](unsigned a, unsigned d) { return report_json(genus_two_absent(a, d)); },
          py::arg("max_ambient") = 6, py::arg("max_degree") = 6);
    m.def("fermat_family", [](unsigned q) { return reports_json(check_fermat_family(q)); }, py::arg("q"));
    m.def("recheck_report", [](const std::string& doc) { return recheck(report_from_json(nlohmann::json::parse(doc))); });

    m.def("lambda_fnq", [](unsigned n, const py::object& q) { return to_py(lambda_fnq(n, from_py(q))); });
    m.def("lambda_identity_curve", [](const py::object& g) { return to_py(lambda_identity_curve(from_py(g))); });
    m.def("has_fixed_point_diagonal", &has_fixed_point_diagonal, py::arg("k"), py::arg("n"), py::arg("m"));
    m.def("min_period_diagonal", &min_period_diagonal, py::arg("k"), py::arg("n"));

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::vector<std::string> full{"fqlab"};
        full.insert(full.end(), args.begin(), args.end());
        std::vector<const char*> argv;
        for (const auto& a : full) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
    });
}
