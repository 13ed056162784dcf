#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gptaudit/audit.hpp"
#include "gptaudit/discrimination.hpp"
#include "gptaudit/geometry.hpp"
#include "gptaudit/models.hpp"
#include "gptaudit/selfcheck.hpp"
#include "gptaudit/serialization.hpp"

namespace py = pybind11;
using namespace gptaudit;

namespace {

DiscriminationResult mesd_dispatch(const ModelSpec& model, int a, int b) {
    switch (model.kind) {
        case ModelKind::polytope:
            return mesd_polytope(model, model.pure_states.at(a), model.pure_states.at(b));
        case ModelKind::measurement_list:
            return mesd_spekkens(model, a, b);
        case ModelKind::qubit:
            throw std::invalid_argument("qubit states are continuous; use mesd_qubit(b1, b2)");
    }
    throw std::invalid_argument("unknown model kind");
}

}  // namespace

PYBIND11_MODULE(gptaudit, m) {
    m.doc() = "GPT state spaces, minimum-error discrimination, and information-symmetry audits";

    py::class_<ModelSpec>(m, "ModelSpec")
        .def_readonly("name", &ModelSpec::name)
        .def_readonly("dim", &ModelSpec::dim)
        .def_property_readonly("kind",
                               [](const ModelSpec& s) {
                                   switch (s.kind) {
                                       case ModelKind::polytope: return "polytope";
                                       case ModelKind::qubit: return "qubit";
                                       case ModelKind::measurement_list:
                                           return "measurement_list";
                                   }
                                   return "?";
                               })
        .def_property_readonly(
            "num_pure_states",
            [](const ModelSpec& s) { return s.pure_states.size(); })
        .def_property_readonly("num_effects",
                               [](const ModelSpec& s) { return s.effects.size(); })
        .def("to_json", [](const ModelSpec& s) { return model_to_json(s); })
        .def("__repr__", [](const ModelSpec& s) { return "<ModelSpec " + s.name + ">"; });

    py::class_<Minimizer>(m, "Minimizer")
        .def_readonly("p12", &Minimizer::p12)
        .def_readonly("p21", &Minimizer::p21)
        .def_property_readonly("kind",
                               [](const Minimizer& mm) { return std::string(to_string(mm.kind)); })
        .def_property_readonly("effect",
                               [](const Minimizer& mm) { return mm.measurement.effect.coords; });

    py::class_<DiscriminationResult>(m, "DiscriminationResult")
        .def_readonly("pE", &DiscriminationResult::pE)
        .def_readonly("p12", &DiscriminationResult::p12)
        .def_readonly("p21", &DiscriminationResult::p21)
        .def_readonly("asymmetry", &DiscriminationResult::asymmetry)
        .def_readonly("minimizers", &DiscriminationResult::minimizers)
        .def("min_pure_asymmetry", &DiscriminationResult::min_pure_asymmetry)
        .def("__repr__", [](const DiscriminationResult& r) {
            return "<DiscriminationResult pE=" + format_sig(r.pE) + ">";
        });

    py::class_<PairVerdict>(m, "PairVerdict")
        .def_readonly("state_a", &PairVerdict::state_a)
        .def_readonly("state_b", &PairVerdict::state_b)
        .def_readonly("satisfied", &PairVerdict::is_satisfied)
        .def_readonly("pair_asymmetry", &PairVerdict::pair_asymmetry)
        .def_readonly("result", &PairVerdict::result);

    py::class_<ISReport>(m, "ISReport")
        .def_readonly("model", &ISReport::model)
        .def_readonly("satisfied", &ISReport::satisfied)
        .def_readonly("max_asymmetry", &ISReport::max_asymmetry)
        .def_readonly("pairs", &ISReport::pairs)
        .def("to_json", [](const ISReport& r) { return is_report_to_json(r); });

    py::class_<GISRow>(m, "GISRow")
        .def_readonly("p", &GISRow::p)
        .def_readonly("description", &GISRow::description)
        .def_readonly("min_error", &GISRow::min_error)
        .def_readonly("symmetric_error", &GISRow::symmetric_error)
        .def_readonly("satisfied", &GISRow::satisfied);

    py::class_<GISReport>(m, "GISReport")
        .def_readonly("model", &GISReport::model)
        .def_readonly("satisfied", &GISReport::satisfied)
        .def_readonly("max_gap", &GISReport::max_gap)
        .def_readonly("max_asymmetry", &GISReport::max_asymmetry)
        .def_readonly("rows", &GISReport::rows)
        .def("to_json", [](const GISReport& r) { return gis_report_to_json(r); });

    m.def("polygon_model", &polygon_model, py::arg("n"));
    m.def("classical_model", &classical_model, py::arg("d"));
    m.def("squit_model", &squit_model);
    m.def("qubit_model", &qubit_model);
    m.def("spekkens_model", &spekkens_model);
    m.def("model_from_json", &model_from_json_text, py::arg("text"));

    m.def("mesd", &mesd_dispatch, py::arg("model"), py::arg("state_a"), py::arg("state_b"),
          "Minimum-error discrimination of two pure states addressed by label");
    m.def("mesd_qubit", &mesd_qubit, py::arg("bloch1"), py::arg("bloch2"));
    m.def("helstrom", &helstrom, py::arg("overlap_sq"), py::arg("prior"));
    m.def("oddgon_closed_form", [](int n) {
        const auto f = oddgon_closed_form(n);
        return py::make_tuple(f.k_opt, f.p, f.p_bar);
    });
    m.def("spekkens_state_index", &spekkens_state_index, py::arg("name"));

    m.def(
        "audit_is",
        [](const ModelSpec& model, double tolerance, const std::string& policy) {
            return audit_is(model, tolerance, policy_from_string(policy));
        },
        py::arg("model"), py::arg("tolerance") = 1e-9, py::arg("policy") = "any");
    m.def("audit_gis", &audit_gis, py::arg("model"), py::arg("p_grid"),
          py::arg("tolerance") = 1e-9);

    m.def("sweep_odd", [](int m_min, int m_max) {
        py::list rows;
        for (const auto& r : sweep_odd(m_min, m_max)) {
            rows.append(py::make_tuple(r.m, r.n, r.p, r.p_bar, r.abs_diff));
        }
        return rows;
    });
    m.def("sweep_even_case1", [](int m_min, int m_max) {
        py::list rows;
        for (const auto& r : sweep_even_case1(m_min, m_max)) {
            rows.append(py::make_tuple(r.m, r.l, r.n, r.p, r.p_bar, r.abs_diff));
        }
        return rows;
    });
    m.def("sweep_even_case2", [](int m_min, int m_max) {
        py::list rows;
        for (const auto& r : sweep_even_case2(m_min, m_max)) {
            rows.append(py::make_tuple(r.m, r.l, r.n, r.pE, r.min_pure_asymmetry));
        }
        return rows;
    });

    m.def("run_selfcheck", [](double tolerance) {
        const auto rep = run_selfcheck(tolerance);
        py::list checks;
        for (const auto& c : rep.checks) checks.append(py::make_tuple(c.name, c.pass, c.detail));
        py::dict out;
        out["all_pass"] = rep.all_pass;
        out["checks"] = checks;
        out["notes"] = rep.notes;
        return out;
    }, py::arg("tolerance") = 1e-9);
}
