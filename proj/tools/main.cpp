// ehrhart-roots: command-line front end.

#include "ehrhart/report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace ehrhart;

namespace {

struct Options {
    std::string format = "text";
    std::uint64_t seed = kDefaultSeed;
    unsigned jobs = 0;
    int max_n = 2;
    int max_d = 30;
    double tol_classify = 1e-7;
    double tol_residual = 1e-9;
    double tol_distinct = 1e-6;
    std::string out;
    bool verify = false;
};

unsigned default_jobs() {
    const char* env = std::getenv("EHRHART_ROOTS_JOBS");
    if (!env || !*env) return 0;
    try {
        return static_cast<unsigned>(std::stoul(env));
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("EHRHART_ROOTS_JOBS is not a nonnegative integer: ") + env);
    }
}

RunConfig make_config(const Options& o) {
    RunConfig cfg;
    cfg.format = parse_output_format(o.format);
    cfg.seed = o.seed;
    cfg.jobs = o.jobs;
    cfg.max_n = o.max_n;
    cfg.verify = o.verify;
    cfg.tol.classify = o.tol_classify;
    cfg.tol.residual = o.tol_residual;
    cfg.tol.distinct = o.tol_distinct;
    cfg.theorem.max_d_numeric = o.max_d;
    cfg.validate();
    return cfg;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return in;
}

int parse_count(const std::string& s, const std::string& spec) {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters in '" + spec + "'");
    return v;
}

/// Builtin graph ("cycle:6", "path:4", "complete:4", "star:5", "bipartite:2,3") or an edge file.
std::pair<std::string, Graph> load_graph(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon != std::string::npos) {
        std::string kind = spec.substr(0, colon), arg = spec.substr(colon + 1);
        try {
            if (kind == "cycle") return {spec, cycle_graph(parse_count(arg, spec))};
            if (kind == "path") return {spec, path_graph(parse_count(arg, spec))};
            if (kind == "complete") return {spec, complete_graph(parse_count(arg, spec))};
            if (kind == "star") return {spec, star_graph(parse_count(arg, spec))};
            if (kind == "bipartite") {
                auto comma = arg.find(',');
                if (comma == std::string::npos) throw std::invalid_argument("expected bipartite:A,B");
                return {spec, complete_bipartite_graph(parse_count(arg.substr(0, comma), spec),
                                                       parse_count(arg.substr(comma + 1), spec))};
            }
        } catch (const std::exception& e) {
            throw std::invalid_argument("bad graph spec '" + spec + "': " + e.what());
        }
    }
    auto in = open_input(spec);
    return {spec, parse_edge_file(in)};
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::invalid_argument("cannot write " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

int emit(const CommandResult& res, const RunConfig& cfg, const std::string& out_path) {
    Output out(out_path);
    if (cfg.format == OutputFormat::json)
        out.stream() << dump_canonical(res.report) << '\n';
    else if (cfg.format == OutputFormat::text)
        out.stream() << render_text(res.report);
    else
        throw std::invalid_argument("csv output is only available for rootlocus");
    return res.exit;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ehrhart polynomials, delta-vectors and root locations of lattice polytopes"};
    app.require_subcommand(1);
    Options o;
    try {
        o.jobs = default_jobs();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code::usage;
    }

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", o.format, "json, text or csv")->capture_default_str();
        cmd->add_option("--seed", o.seed, "root-finder seed")->capture_default_str();
        cmd->add_option("--jobs", o.jobs, "worker threads (0 = all cores; default from EHRHART_ROOTS_JOBS)");
        cmd->add_option("--max-n", o.max_n, "dilations used by the reciprocity spot-check")->capture_default_str();
        cmd->add_option("--max-d", o.max_d, "largest family dimension accepted")->capture_default_str();
        cmd->add_option("--tol-classify", o.tol_classify, "real / critical-line tolerance")->capture_default_str();
        cmd->add_option("--tol-residual", o.tol_residual, "root residual tolerance")->capture_default_str();
        cmd->add_option("--tol-distinct", o.tol_distinct, "minimum root separation")->capture_default_str();
        cmd->add_option("--out", o.out, "write output here instead of stdout");
        cmd->add_flag("--verify", o.verify, "run brute-force cross-checks where feasible");
    };

    int d = -1, k = -1;
    auto* family = app.add_subcommand("family", "check the root theorem for the family P(k, d)");
    family->add_option("--d", d, "dimension")->required();
    family->add_option("--k", k, "number of imaginary root pairs")->required();
    add_common(family);

    std::string vertex_file;
    auto* ehr = app.add_subcommand("ehrhart", "Ehrhart analysis of a polytope given by its vertices");
    ehr->add_option("vertices", vertex_file, "vertex file")->required();
    add_common(ehr);

    std::string graph_spec;
    auto* graph = app.add_subcommand("graph", "symmetric edge polytope of a graph");
    graph->add_option("edges", graph_spec, "edge file or builtin (cycle:N, path:N, complete:N, star:N, bipartite:A,B)")
        ->required();
    add_common(graph);

    int max_vertices = 7;
    auto* scan = app.add_subcommand("scan", "all connected graphs up to a vertex count, as JSON lines");
    scan->add_option("--max-vertices", max_vertices, "2..7")->capture_default_str();
    add_common(scan);

    int d_min = 0, d_max = -1;
    std::vector<std::string> graph_specs;
    auto* locus = app.add_subcommand("rootlocus", "root locations as CSV");
    locus->add_option("--d-min", d_min, "smallest family dimension");
    locus->add_option("--d-max", d_max, "largest family dimension");
    locus->add_option("--d", [&](const std::vector<std::string>& v) {
        d_min = d_max = std::stoi(v.front());
        return true;
    }, "single family dimension");
    locus->add_option("--k", k, "restrict the family grid to this k");
    locus->add_option("--graph", graph_specs, "edge file or builtin graph (repeatable)");
    add_common(locus);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? exit_code::ok : exit_code::usage;
    }

    try {
        RunConfig cfg = make_config(o);
        if (*family) return emit(run_family(d, k, cfg), cfg, o.out);
        if (*ehr) {
            auto in = open_input(vertex_file);
            return emit(run_ehrhart(parse_vertex_file(in), cfg), cfg, o.out);
        }
        if (*graph) return emit(run_graph(load_graph(graph_spec).second, cfg), cfg, o.out);
        if (*scan) {
            if (max_vertices < 2 || max_vertices > 7) throw std::invalid_argument("--max-vertices must be in 2..7");
            Output out(o.out);
            return run_scan(max_vertices, cfg, out.stream());
        }
        if (*locus) {
            RootLocusSpec spec;
            spec.d_min = d_min;
            spec.d_max = d_max;
            spec.k_only = k >= 0 ? std::optional<int>(k) : std::nullopt;
            if (spec.k_only && d_min <= d_max) FamilyParams(*spec.k_only, d_min);
            for (const auto& s : graph_specs) spec.graphs.push_back(load_graph(s));
            std::ostringstream buf;
            int rc = write_rootlocus_csv(spec, cfg, buf);
            Output out(o.out);
            out.stream() << buf.str();
            return rc;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: value out of range: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const GeometryError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const GraphError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const std::exception& e) {
        std::cerr << "check failed: " << e.what() << '\n';
        return exit_code::check_failed;
    }
    return exit_code::usage;
}
