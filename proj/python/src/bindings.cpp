#include "ehrhart/ehrhart.hpp"
#include "ehrhart/family.hpp"
#include "ehrhart/graphs.hpp"
#include "ehrhart/report.hpp"
#include "ehrhart/roots.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace ehrhart;

namespace {

using Coeffs = std::vector<std::string>;
using Edges = std::vector<std::pair<int, int>>;
using release = py::call_guard<py::gil_scoped_release>;

Polynomial to_poly(const Coeffs& c) {
    std::vector<Rational> v;
    v.reserve(c.size());
    for (const auto& s : c) v.push_back(parse_rational(s));
    return Polynomial(std::move(v));
}

Coeffs from_poly(const Polynomial& p) {
    Coeffs out;
    for (const auto& c : p.coefficients()) out.push_back(format_rational(c));
    return out;
}

std::vector<std::string> from_delta(const DeltaVector& d) {
    std::vector<std::string> out;
    for (const auto& e : d.entries()) out.push_back(e.get_str());
    return out;
}

DeltaVector to_delta(const std::vector<std::string>& v) {
    std::vector<Integer> e;
    for (const auto& s : v) e.emplace_back(s);
    return DeltaVector(std::move(e));
}

Graph to_graph(int n, const Edges& edges) {
    std::vector<Graph::Edge> e(edges.begin(), edges.end());
    return Graph(n, std::move(e));
}

std::vector<Rational> to_rationals(const std::vector<std::string>& v) {
    std::vector<Rational> out;
    for (const auto& s : v) out.push_back(parse_rational(s));
    return out;
}

RunConfig config(bool verify, std::uint64_t seed, unsigned jobs) {
    RunConfig cfg;
    cfg.verify = verify;
    cfg.seed = seed;
    cfg.jobs = jobs;
    cfg.format = OutputFormat::json;
    return cfg;
}

std::pair<std::string, int> dump(const CommandResult& r) { return {dump_canonical(r.report), r.exit}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Native core of ehrhart_roots; use the package-level wrappers.";

    auto value_error = py::module_::import("builtins").attr("ValueError");
    py::register_exception<GeometryError>(m, "GeometryError", value_error);
    py::register_exception<GraphError>(m, "GraphError", value_error);
    py::register_exception<EhrhartError>(m, "EhrhartError", value_error);
    py::register_exception<ArithmeticError>(m, "ArithmeticError", value_error);
    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

    m.attr("DEFAULT_SEED") = kDefaultSeed;

    m.def(
        "ehrhart_polynomial",
        [](const std::vector<LatticePoint>& vertices, unsigned jobs) {
            EhrhartOptions opt;
            opt.jobs = jobs;
            return from_poly(ehrhart_by_interpolation(VPolytope(vertices), opt));
        },
        py::arg("vertices"), py::arg("jobs") = 1, release());
    m.def(
        "delta_from_ehrhart", [](const Coeffs& c, int d) { return from_delta(delta_from_ehrhart(to_poly(c), d)); },
        py::arg("coefficients"), py::arg("d"));
    m.def(
        "ehrhart_from_delta", [](const std::vector<std::string>& d) { return from_poly(ehrhart_from_delta(to_delta(d))); },
        py::arg("delta"));
    m.def(
        "find_roots",
        [](const Coeffs& c, std::uint64_t seed) { return find_roots_numeric(to_poly(c), {}, seed); },
        py::arg("coefficients"), py::arg("seed") = kDefaultSeed, release());
    m.def(
        "certify_critical_line",
        [](const Coeffs& c, const std::vector<std::string>& known) {
            Certificate cert = verify_critical_line_exact(to_poly(c), to_rationals(known));
            py::dict out;
            out["pass"] = cert.pass;
            out["stage"] = std::string(stage_name(cert.stage));
            out["reason"] = cert.reason;
            out["quotient"] = from_poly(cert.quotient);
            out["even_part"] = from_poly(cert.even_part);
            out["on_critical_line"] = cert.on_critical_line();
            return out;
        },
        py::arg("coefficients"), py::arg("known_real_roots") = std::vector<std::string>{});

    m.def(
        "family_polytope", [](int d, int k) { return build_P(FamilyParams(k, d)).vertices(); }, py::arg("d"),
        py::arg("k"), release());
    m.def(
        "family_ehrhart", [](int d, int k) { return from_poly(closed_form_P(FamilyParams(k, d))); }, py::arg("d"),
        py::arg("k"));
    m.def(
        "family_report",
        [](int d, int k, bool verify, std::uint64_t seed, unsigned jobs) {
            return dump(run_family(d, k, config(verify, seed, jobs)));
        },
        py::arg("d"), py::arg("k"), py::arg("verify") = false, py::arg("seed") = kDefaultSeed, py::arg("jobs") = 1,
        release());
    m.def(
        "polytope_report",
        [](const std::vector<LatticePoint>& vertices, bool verify, std::uint64_t seed, unsigned jobs) {
            return dump(run_ehrhart(VPolytope(vertices), config(verify, seed, jobs)));
        },
        py::arg("vertices"), py::arg("verify") = false, py::arg("seed") = kDefaultSeed, py::arg("jobs") = 1,
        release());

    m.def(
        "lemma_polynomial", [](const std::vector<std::string>& g) { return from_poly(lemma2_polynomial(Gammas(to_rationals(g)))); },
        py::arg("gammas"));
    m.def(
        "critical_line_roots",
        [](const std::vector<std::string>& g, double tol) {
            std::vector<double> out;
            for (const auto& r : critical_line_roots_bisection(Gammas(to_rationals(g)), tol)) out.push_back(r.b);
            return out;
        },
        py::arg("gammas"), py::arg("tol") = 1e-12);

    m.def(
        "symmetric_edge_polytope", [](int n, const Edges& e) { return symmetric_edge_polytope(to_graph(n, e)).vertices(); },
        py::arg("n_vertices"), py::arg("edges"));
    m.def(
        "graph_report",
        [](int n, const Edges& e, bool verify, std::uint64_t seed, unsigned jobs) {
            return dump(run_graph(to_graph(n, e), config(verify, seed, jobs)));
        },
        py::arg("n_vertices"), py::arg("edges"), py::arg("verify") = false, py::arg("seed") = kDefaultSeed,
        py::arg("jobs") = 1, release());
    m.def(
        "connected_graphs",
        [](int n) {
            std::vector<Edges> out;
            for (const auto& g : enumerate_connected_graphs(n, true)) out.emplace_back(g.edges().begin(), g.edges().end());
            return out;
        },
        py::arg("n_vertices"), release());
    m.def(
        "scan",
        [](int n_max, std::uint64_t seed, unsigned jobs) {
            std::ostringstream out;
            const int code = run_scan(n_max, config(false, seed, jobs), out);
            return std::make_pair(out.str(), code);
        },
        py::arg("max_vertices"), py::arg("seed") = kDefaultSeed, py::arg("jobs") = 0, release());
}
