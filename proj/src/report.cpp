#include "ehrhart/report.hpp"

#include "ehrhart/parallel.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>
#include <sstream>

namespace ehrhart {

using nlohmann::json;

namespace {

json integer_json(const Integer& z) {
    if (z.fits_slong_p()) return json(static_cast<std::int64_t>(z.get_si()));
    return json(z.get_str());
}

json rationals_json(const std::vector<Rational>& v) {
    json a = json::array();
    for (const auto& r : v) a.push_back(format_rational(r));
    return a;
}

json points_json(const std::vector<LatticePoint>& pts) {
    json a = json::array();
    for (const auto& p : pts) a.push_back(p);
    return a;
}

const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string short_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

/// Root with the largest distance from the critical line.
json worst_root_json(const RootReport& r) {
    if (r.roots.empty()) return nullptr;
    const ComplexRoot* worst = &r.roots.front();
    for (const auto& z : r.roots)
        if (std::abs(z.real() + 0.5) > std::abs(worst->real() + 0.5)) worst = &z;
    return json{{"re", worst->real()}, {"im", worst->imag()}, {"deviation", std::abs(worst->real() + 0.5)}};
}

}  // namespace

OutputFormat parse_output_format(const std::string& s) {
    if (s == "json") return OutputFormat::json;
    if (s == "csv") return OutputFormat::csv;
    if (s == "text") return OutputFormat::text;
    throw std::invalid_argument("unknown format '" + s + "' (expected json, csv or text)");
}

void RunConfig::validate() const {
    for (double t : {tol.step, tol.residual, tol.classify, tol.distinct, tol.bisection})
        if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("tolerances must be positive and finite");
    if (tol.max_iterations < 1 || limits.max_vertices < 1 || limits.max_dim < 1 || theorem.max_d_numeric < 1 ||
        theorem.max_d_exact < 1 || max_n < 1)
        throw std::invalid_argument("limits must be at least 1");
}

std::string dump_canonical(const json& j) { return j.dump(); }

json polynomial_json(const Polynomial& p) {
    json a = json::array();
    for (const auto& c : p.coefficients()) a.push_back(format_rational(c));
    return a;
}

json delta_json(const DeltaVector& delta) {
    json a = json::array();
    for (const auto& e : delta.entries()) a.push_back(integer_json(e));
    return a;
}

json roots_json(const std::vector<ComplexRoot>& roots) {
    json a = json::array();
    for (const auto& z : roots) a.push_back({{"re", z.real()}, {"im", z.imag()}});
    return a;
}

json root_report_json(const RootReport& r) {
    return json{{"d", r.d},
                {"roots", roots_json(r.roots)},
                {"n_real", r.n_real},
                {"n_imaginary", r.n_imaginary},
                {"all_imag_on_critical_line", r.all_imag_on_critical_line},
                {"real_roots_in_open_unit_interval", r.real_roots_in_open_unit_interval},
                {"distinct", r.distinct},
                {"conjecture_band_ok", r.conjecture_band_ok},
                {"conjugate_pairs", r.conjugate_pairs},
                {"max_critical_line_deviation", r.max_critical_line_deviation}};
}

json certificate_json(const Certificate& c) {
    json j{{"status", verdict(c.pass)},
           {"stage", stage_name(c.stage)},
           {"on_critical_line", c.on_critical_line()},
           {"reason", c.reason},
           {"quotient", polynomial_json(c.quotient)},
           {"H", polynomial_json(c.even_part)}};
    j["negative_roots"] = c.negative_roots ? json(*c.negative_roots) : json(nullptr);
    return j;
}

json graph_record_json(const GraphRecord& r) {
    json edges = json::array();
    for (auto [i, j] : r.graph.edges()) edges.push_back({i, j});
    json j{{"n_vertices", r.graph.n_vertices()}, {"edges", edges}, {"dim", r.dim}};
    if (r.error) {
        j["error"] = *r.error;
        return j;
    }
    j["ehrhart"] = polynomial_json(r.i_poly);
    j["delta"] = delta_json(r.delta);
    j["gorenstein"] = r.gorenstein;
    json viol = json::array();
    for (const auto& v : r.violations) viol.push_back(v.message);
    j["violations"] = viol;
    j["roots"] = root_report_json(r.report);
    j["numeric_on_line"] = r.numeric_on_line;
    j["critical_line"] = r.critical_line;
    j["certificate"] = certificate_json(r.certificate);
    j["agreement"] = r.numeric_on_line == r.critical_line;
    if (!r.numeric_on_line) j["offending_root"] = worst_root_json(r.report);
    return j;
}

CommandResult run_family(int d, int k, const RunConfig& cfg) {
    cfg.validate();
    FamilyParams params(k, d);
    if (d > cfg.theorem.max_d_numeric)
        throw std::invalid_argument("d = " + std::to_string(d) + " exceeds max_d = " +
                                    std::to_string(cfg.theorem.max_d_numeric));
    CommandResult res;
    json& j = res.report;
    j["command"] = "family";
    j["d"] = d;
    j["k"] = k;
    json skipped = json::array();

    if (static_cast<std::size_t>(d) <= cfg.limits.max_dim) {
        VPolytope P = build_P(params, cfg.limits);
        j["vertices"] = points_json(P.vertices());
    } else {
        j["vertices"] = nullptr;
        skipped.push_back("vertices: d exceeds the interior-point search limit");
    }

    TheoremCheck tc = theorem_property_check(params, cfg.tol, cfg.seed, cfg.theorem);
    j["ehrhart"] = polynomial_json(tc.i_poly);
    j["ehrhart_text"] = tc.i_poly.to_string();
    DeltaVector delta = delta_from_ehrhart(tc.i_poly, d);
    j["delta"] = delta_json(delta);
    j["gorenstein"] = is_gorenstein(delta);
    j["functional_equation"] = check_functional_equation(tc.i_poly, d);
    j["F"] = polynomial_json(F_polynomial(params));
    j["expected_real_roots"] = rationals_json(tc.expected_real);
    j["roots"] = root_report_json(tc.report);
    j["real_roots_match"] = tc.real_roots_match;
    j["items"] = {{"i_distinct", verdict(tc.distinct_roots)},
                  {"ii_imaginary_count", verdict(tc.imaginary_count)},
                  {"iii_real_count", verdict(tc.real_count)},
                  {"iv_critical_line", verdict(tc.imaginary_on_line)},
                  {"v_real_in_interval", verdict(tc.real_in_interval)}};
    if (tc.certificate) {
        j["certificate"] = certificate_json(*tc.certificate);
    } else {
        j["certificate"] = {{"status", "SKIPPED"}};
        skipped.push_back("certificate: d exceeds the exact limit");
    }

    bool ok = tc.all_pass() && is_gorenstein(delta) && validate_delta(delta).empty() &&
              tc.report.conjecture_band_ok;

    if (cfg.verify) {
        json v;
        if (d <= 5) {
            VPolytope P = build_P(params, cfg.limits);
            HRep h = facet_enumeration(P, cfg.limits);
            bool fano = is_fano(P, cfg.limits);
            bool counts = true;
            for (int n = 1; n <= d; ++n)
                if (Rational(static_cast<unsigned long>(
                        count_lattice_points(P, h, n, CountMode::closed, resolve_jobs(cfg.jobs)))) !=
                    tc.i_poly(Rational(n)))
                    counts = false;
            VPolytope Qc = build_Qc(params);
            bool qc_counts = true;
            Polynomial qc = closed_form_Qc(params);
            for (int n = 1; n <= 4; ++n)
                if (Rational(static_cast<unsigned long>(count_lattice_points(Qc, n, CountMode::closed, 1,
                                                                             cfg.limits))) != qc(Rational(n)))
                    qc_counts = false;
            v = {{"fano", fano}, {"counts_match_closed_form", counts}, {"qc_counts_match_closed_form", qc_counts}};
            ok = ok && fano && counts && qc_counts;
        } else {
            skipped.push_back("verify: brute-force counts only for d <= 5");
        }
        j["verify"] = v;
    }
    j["skipped"] = skipped;
    j["pass"] = ok;
    res.exit = ok ? exit_code::ok : exit_code::check_failed;
    return res;
}

CommandResult run_ehrhart(const VPolytope& p, const RunConfig& cfg) {
    cfg.validate();
    CommandResult res;
    json& j = res.report;
    const int d = static_cast<int>(p.ambient_dim());
    EhrhartOptions opt{resolve_jobs(cfg.jobs), cfg.limits};
    j["command"] = "ehrhart";
    j["dim"] = d;
    j["vertices"] = points_json(p.vertices());
    HRep h = facet_enumeration(p, cfg.limits);
    json facets = json::array();
    for (const auto& f : h.rows) facets.push_back({{"normal", f.normal}, {"rhs", f.rhs}});
    j["facets"] = facets;

    Polynomial i_poly = ehrhart_by_interpolation(p, opt);
    j["ehrhart"] = polynomial_json(i_poly);
    j["ehrhart_text"] = i_poly.to_string();

    bool ok = true;
    json viol = json::array();
    std::optional<DeltaVector> delta;
    try {
        delta = delta_from_ehrhart(i_poly, d);
    } catch (const EhrhartError& e) {
        viol.push_back(e.what());
        ok = false;
    }
    bool fe = check_functional_equation(i_poly, d);
    j["functional_equation"] = fe;
    if (delta) {
        j["delta"] = delta_json(*delta);
        bool gor = is_gorenstein(*delta);
        j["gorenstein"] = gor;
        for (const auto& v : validate_delta(*delta)) viol.push_back(v.message);
        if (gor != fe) {
            viol.push_back("delta symmetry and functional equation disagree");
            ok = false;
        }
    }
    if (!viol.empty()) ok = false;
    j["violations"] = viol;

    auto rec = check_reciprocity(p, i_poly, cfg.max_n, opt);
    j["reciprocity"] = {{"n_max", cfg.max_n}, {"ok", rec.ok}};
    if (rec.first_failure) j["reciprocity"]["first_failure"] = *rec.first_failure;
    ok = ok && rec.ok;

    RootReport rr = classify_roots(find_roots_numeric(i_poly, cfg.tol, cfg.seed), d, cfg.tol);
    j["roots"] = root_report_json(rr);
    ok = ok && rr.conjecture_band_ok;
    std::vector<Rational> known;
    if (d % 2 == 1 && i_poly(make_rational(-1, 2)) == 0) known.push_back(make_rational(-1, 2));
    j["certificate"] = certificate_json(verify_critical_line_exact(i_poly, known));

    if (cfg.verify) {
        json v;
        auto c1 = count_lattice_points(p, h, 1, CountMode::closed, opt.jobs);
        auto int1 = count_lattice_points(p, h, 1, CountMode::interior, opt.jobs);
        if (delta) {
            bool d1 = (*delta)[1] == Integer(std::to_string(c1)) - (d + 1);
            bool dd = (*delta)[static_cast<std::size_t>(d)] == Integer(std::to_string(int1));
            Rational volume = i_poly.leading();
            for (int i = 2; i <= d; ++i) volume *= i;
            bool sum = Rational(delta->sum()) == volume;
            v = {{"delta_1_matches_count", d1}, {"delta_d_matches_interior", dd}, {"delta_sum_matches_volume", sum}};
            ok = ok && d1 && dd && sum;
        }
        j["verify"] = v;
    }
    j["pass"] = ok;
    res.exit = ok ? exit_code::ok : exit_code::check_failed;
    return res;
}

CommandResult run_graph(const Graph& g, const RunConfig& cfg) {
    cfg.validate();
    if (auto v = g.separated_vertex())
        throw std::invalid_argument("graph is disconnected: vertex " + std::to_string(*v) +
                                    " is not reachable from vertex 1");
    CommandResult res;
    GraphRecord rec = analyze_graph(g, {cfg.tol, cfg.seed, resolve_jobs(cfg.jobs)});
    res.report = graph_record_json(rec);
    res.report["command"] = "graph";
    res.report["canonical_edges"] = graph_record_json(GraphRecord{canonical_form(g)})["edges"];
    bool ok = rec.violations.empty() && rec.gorenstein && rec.numeric_on_line == rec.critical_line &&
              rec.report.conjecture_band_ok;
    if (cfg.verify) {
        VPolytope p = symmetric_edge_polytope(g);
        std::set<LatticePoint> verts(p.vertices().begin(), p.vertices().end());
        bool symmetric = true;
        for (auto v : p.vertices()) {
            for (auto& x : v) x = -x;
            if (!verts.count(v)) symmetric = false;
        }
        json v{{"centrally_symmetric", symmetric}};
        const bool tree = static_cast<int>(g.edges().size()) == g.n_vertices() - 1;
        if (tree) {
            bool match = rec.delta == tree_delta_expected(rec.dim);
            v["tree_delta_matches_binomial_row"] = match;
            ok = ok && match;
        }
        ok = ok && symmetric;
        res.report["verify"] = v;
    }
    res.report["pass"] = ok;
    res.exit = ok ? exit_code::ok : exit_code::check_failed;
    return res;
}

int run_scan(int n_max, const RunConfig& cfg, std::ostream& out) {
    cfg.validate();
    std::size_t total = 0, on_line = 0, off_line = 0, failures = 0, disagreements = 0, not_gorenstein = 0,
                band_violations = 0;
    scan_graphs(n_max, {cfg.tol, cfg.seed, 1}, resolve_jobs(cfg.jobs), [&](const GraphRecord& r) {
        ++total;
        if (r.error) {
            ++failures;
        } else {
            (r.critical_line ? on_line : off_line)++;
            if (r.numeric_on_line != r.critical_line) ++disagreements;
            if (!r.gorenstein || !r.violations.empty()) ++not_gorenstein;
            if (!r.report.conjecture_band_ok) ++band_violations;
        }
        json j = graph_record_json(r);
        j["command"] = "scan";
        out << dump_canonical(j) << '\n' << std::flush;
    });
    json summary{{"summary",
                  {{"records", total},
                   {"critical_line", on_line},
                   {"off_critical_line", off_line},
                   {"errors", failures},
                   {"disagreements", disagreements},
                   {"validator_failures", not_gorenstein},
                   {"conjecture_band_violations", band_violations},
                   {"max_vertices", n_max}}}};
    out << dump_canonical(summary) << '\n';
    bool ok = failures == 0 && disagreements == 0 && not_gorenstein == 0 && band_violations == 0;
    return ok ? exit_code::ok : exit_code::check_failed;
}

int write_rootlocus_csv(const RootLocusSpec& spec, const RunConfig& cfg, std::ostream& out) {
    cfg.validate();
    out << "source,d,k,re,im,is_real,on_critical_line\n";
    bool ok = true;
    auto row = [&](const std::string& source, int d, const std::string& k, ComplexRoot z) {
        const bool real = std::abs(z.imag()) <= cfg.tol.classify;
        const bool line = std::abs(z.real() + 0.5) <= cfg.tol.classify;
        out << source << ',' << d << ',' << k << ',' << format_double(z.real()) << ',' << format_double(z.imag())
            << ',' << (real ? "true" : "false") << ',' << (line ? "true" : "false") << '\n';
    };
    std::vector<FamilyParams> cases;
    for (int d = std::max(1, spec.d_min); d <= spec.d_max; ++d)
        for (int k = 0; 2 * k <= d; ++k)
            if (!spec.k_only || *spec.k_only == k) cases.emplace_back(k, d);
    ordered_parallel_for<std::vector<ComplexRoot>>(
        cases.size(), resolve_jobs(cfg.jobs),
        [&](std::size_t i) { return find_roots_numeric(closed_form_P(cases[i]), cfg.tol, cfg.seed); },
        [&](std::size_t i, std::vector<ComplexRoot>& roots) {
            for (auto z : roots) row("family", cases[i].d(), std::to_string(cases[i].k()), z);
        });
    for (const auto& [label, g] : spec.graphs) {
        GraphRecord rec = analyze_graph(g, {cfg.tol, cfg.seed, resolve_jobs(cfg.jobs)});
        if (rec.numeric_on_line != rec.critical_line) ok = false;
        for (auto z : rec.report.roots) row(label, rec.dim, "", z);
    }
    return ok ? exit_code::ok : exit_code::check_failed;
}

std::string render_text(const json& r) {
    std::ostringstream out;
    auto list = [](const json& a) {
        std::string s;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i) s += ", ";
            s += a[i].is_string() ? a[i].get<std::string>() : a[i].dump();
        }
        return s;
    };
    const std::string cmd = r.value("command", "");
    if (cmd == "family") out << "family  d=" << r["d"] << "  k=" << r["k"] << '\n';
    if (cmd == "ehrhart") out << "ehrhart  dim=" << r["dim"] << '\n';
    if (cmd == "graph" || cmd == "scan") out << "graph  dim=" << r["dim"] << "  edges=" << r["edges"].dump() << '\n';
    if (r.contains("vertices") && r["vertices"].is_array())
        out << "  vertices          " << list(r["vertices"]) << '\n';
    if (r.contains("ehrhart_text")) out << "  i(P,n)            " << r["ehrhart_text"].get<std::string>() << '\n';
    if (r.contains("ehrhart")) out << "  coefficients      " << list(r["ehrhart"]) << '\n';
    if (r.contains("delta")) out << "  delta             (" << list(r["delta"]) << ")\n";
    if (r.contains("gorenstein")) out << "  gorenstein        " << (r["gorenstein"].get<bool>() ? "yes" : "no") << '\n';
    if (r.contains("reciprocity"))
        out << "  reciprocity       " << verdict(r["reciprocity"]["ok"].get<bool>()) << " (n <= "
            << r["reciprocity"]["n_max"] << ")\n";
    if (r.contains("violations") && !r["violations"].empty())
        for (const auto& v : r["violations"]) out << "  violation         " << v.get<std::string>() << '\n';
    if (r.contains("roots")) {
        const auto& rr = r["roots"];
        out << "  roots (" << rr["n_real"] << " real, " << rr["n_imaginary"] << " imaginary)\n";
        out << "      re                    im                    |re+1/2|\n";
        for (const auto& z : rr["roots"]) {
            double re = z["re"].get<double>(), im = z["im"].get<double>();
            char buf[128];
            std::snprintf(buf, sizeof buf, "      %-21s %-21s %.3g\n", short_double(re).c_str(),
                          short_double(im).c_str(), std::abs(re + 0.5));
            out << buf;
        }
    }
    if (r.contains("items"))
        for (auto it = r["items"].begin(); it != r["items"].end(); ++it)
            out << "  item " << it.key() << std::string(22 - std::min<std::size_t>(21, it.key().size()), ' ')
                << it.value().get<std::string>() << '\n';
    if (r.contains("critical_line"))
        out << "  critical line     " << (r["critical_line"].get<bool>() ? "yes" : "no") << '\n';
    if (r.contains("offending_root"))
        out << "  offending root    re=" << short_double(r["offending_root"]["re"].get<double>())
            << " im=" << short_double(r["offending_root"]["im"].get<double>()) << '\n';
    if (r.contains("certificate")) {
        const auto& c = r["certificate"];
        out << "  certificate       " << c["status"].get<std::string>();
        if (c.contains("stage") && c["status"] != "PASS") out << " at " << c["stage"].get<std::string>();
        if (c.contains("reason") && !c["reason"].get<std::string>().empty())
            out << " (" << c["reason"].get<std::string>() << ")";
        out << '\n';
    }
    if (r.contains("verify") && r["verify"].is_object())
        for (auto it = r["verify"].begin(); it != r["verify"].end(); ++it)
            out << "  verify " << it.key() << "  " << it.value().dump() << '\n';
    if (r.contains("skipped"))
        for (const auto& s : r["skipped"]) out << "  skipped           " << s.get<std::string>() << '\n';
    if (r.contains("pass")) out << "  result            " << verdict(r["pass"].get<bool>()) << '\n';
    return out.str();
}

}  // namespace ehrhart
