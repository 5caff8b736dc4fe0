#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "aodes/solveapi.hpp"

namespace py = pybind11;
using namespace aodes;

namespace {

// All entry points return the JSON report; failures raise ValueError /
// RuntimeError with the library's message so python callers can branch on
// the error kind via the text.
std::string check_result(const CommandResult& r) {
    if (r.exit_code != 0 && r.text.rfind("error:", 0) == 0) {
        throw py::value_error(r.text + " [exit " + std::to_string(r.exit_code) + "]");
    }
    return r.json;
}

} // namespace

PYBIND11_MODULE(_aodes, m) {
    m.doc() = "exact solver for systems of autonomous algebraic ODEs of dimension one";

    m.def("reduce", [](const std::string& system) { return check_result(run_reduce(system)); },
          py::arg("system"),
          "Reduced differential equation of the system; JSON report.");

    m.def("triangularize",
          [](const std::string& system) { return check_result(run_triangularize(system)); },
          py::arg("system"), "Regular chain decomposition; JSON report.");

    m.def(
        "solve",
        [](const std::string& system, const std::string& order, bool at_infinity,
           const std::string& point) {
            SolveOptions opts;
            if (!order.empty()) opts.order = Rat::from_string(order);
            opts.at_infinity = at_infinity;
            if (!point.empty()) {
                auto comma = point.find(',');
                if (comma == std::string::npos)
                    throw py::value_error("point must be 'x0,y0'");
                opts.point = std::make_pair(Rat::from_string(point.substr(0, comma)),
                                            Rat::from_string(point.substr(comma + 1)));
            }
            return check_result(run_solve(system, opts));
        },
        py::arg("system"), py::arg("order") = "", py::arg("at_infinity") = false,
        py::arg("point") = "",
        "Formal Puiseux series solutions (family, critical branches, linear); JSON report.");

    m.def(
        "solve_algebraic",
        [](const std::string& system, bool rational_only) {
            return check_result(run_solve_algebraic(system, rational_only));
        },
        py::arg("system"), py::arg("rational_only") = false,
        "Algebraic/rational solution families; JSON report.");

    m.def(
        "verify",
        [](const std::string& system, const std::string& truncation, const std::string& order) {
            return run_verify(system, truncation, Rat::from_string(order)).json;
        },
        py::arg("system"), py::arg("truncation"), py::arg("order") = "3",
        "Oracle check of a truncation against the system; JSON report.");
}
