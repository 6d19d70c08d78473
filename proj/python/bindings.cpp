#include "stackcoh/errors.hpp"
#include "stackcoh/scenario.hpp"
#include "stackcoh/stack.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace stackcoh;

namespace {

std::map<int, std::size_t> total_dims(const GradedSpace& g, int max_deg)
{
    std::map<int, std::size_t> out;
    for (int n = 0; n <= max_deg; ++n)
        out[n] = 0;
    for (const auto& [k, c] : g.cells())
        if (k.deg + k.wedge <= max_deg)
            out[k.deg + k.wedge] += c.dim;
    return out;
}

}  // namespace

PYBIND11_MODULE(_stackcoh, m)
{
    m.doc() = "Exact cohomology of classifying stacks of finite flat group schemes";

    py::register_exception<Error>(m, "StackcohError", PyExc_RuntimeError);

    // Returns the report as JSON text; errors become an `error` object.
    m.def(
        "run_scenario_text",
        [](const std::string& text, const std::string& name) {
            return render_report(run_scenario_captured(parse_scenario(text, name)));
        },
        py::arg("text"), py::arg("name") = "scenario");

    // Hodge dimensions by total degree s + t.
    m.def(
        "hodge_dims",
        [](std::uint32_t p, const std::string& group, int max_deg) {
            return total_dims(hodge_BG(GroupScheme::parse(p, group), max_deg).table, max_deg);
        },
        py::arg("p"), py::arg("group"), py::arg("max_deg"));

    m.def(
        "derham_dims",
        [](std::uint32_t p, const std::string& group, int max_deg) {
            auto r = derham_BG(GroupScheme::parse(p, group), max_deg);
            std::map<int, std::size_t> out;
            for (int n = 0; n <= max_deg; ++n)
                out[n] = r.table.total_dim(n);
            return out;
        },
        py::arg("p"), py::arg("group"), py::arg("max_deg"));

    m.attr("__version__") = "0.1.0";
}
