#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "weyl/charfun.hpp"
#include "weyl/errors.hpp"
#include "weyl/problem.hpp"
#include "weyl/report.hpp"
#include "weyl/verify.hpp"

namespace py = pybind11;
using namespace weyl;

namespace {

using Rows = std::vector<std::vector<cplx>>;

Rows rows_of(const ComplexMatrix& m) {
    Rows r(m.rows(), std::vector<cplx>(m.cols()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r[i][j] = m(i, j);
    return r;
}

ExtensionSpec extension_of(const ResolvedProblem& r) {
    if (!r.B) throw ContractError("the problem has no \"boundary\" entry");
    return {r.model, *r.B};
}

// Reports cross the boundary as JSON text; the Python side parses them.
std::string report(const std::string& command, const ProblemFile& p, const ojson& payload) {
    return render_report(command, problem_hash(p), payload);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Weyl functions, spectra and characteristic functions of boundary-value problems";

    static py::exception<Error> base(m, "WeylError", PyExc_RuntimeError);
    py::register_local_exception<ParseError>(m, "ParseError", base);
    py::register_local_exception<SchemaError>(m, "SchemaError", base);
    py::register_local_exception<PoleError>(m, "PoleError", base);
    py::register_local_exception<DomainError>(m, "DomainError", base);
    py::register_local_exception<ContractError>(m, "ContractError", base);

    m.def("version", &tool_version);
    m.def("problem_hash", [](const std::string& text) { return problem_hash(parse_problem_text(text)); });
    m.def("canonical", [](const std::string& text) { return serialize_problem(parse_problem_text(text)); });

    m.def(
        "evaluate",
        [](const std::string& text, cplx z) { return rows_of(resolve(parse_problem_text(text)).model.evaluate(z)); },
        py::arg("problem"), py::arg("z"));

    m.def(
        "spectrum",
        [](const std::string& text, double a, double b, int grid_n) {
            const auto p = parse_problem_text(text);
            const auto rep = point_spectrum_real(extension_of(resolve(p)), a, b, grid_n);
            return report("spectrum", p, spectrum_to_json(rep));
        },
        py::arg("problem"), py::arg("a"), py::arg("b"), py::arg("grid_n") = 400);

    m.def(
        "count_complex",
        [](const std::string& text, std::array<double, 4> rect) {
            return count_complex_eigenvalues(extension_of(resolve(parse_problem_text(text))), rect);
        },
        py::arg("problem"), py::arg("rect"));

    m.def(
        "negcount",
        [](const std::string& text) {
            const auto p = parse_problem_text(text);
            const auto r = resolve(p);
            return report("negcount", p, negative_count_to_json(negative_count(extension_of(r), r.oracle)));
        },
        py::arg("problem"));

    m.def(
        "charfn",
        [](const std::string& text, cplx z) {
            return rows_of(char_function(extension_of(resolve(parse_problem_text(text))), z));
        },
        py::arg("problem"), py::arg("z"));

    m.def(
        "verify",
        [](const std::string& suite, std::uint64_t seed) {
            const auto results = run_suites(suite, seed, 1);
            bool ok = true;
            for (const auto& r : results) ok = ok && r.passed();
            return py::make_tuple(ok, render_report("verify", std::nullopt, suites_to_json(results)));
        },
        py::arg("suite") = "all", py::arg("seed") = 0);
}
