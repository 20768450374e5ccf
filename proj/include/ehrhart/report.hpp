#pragma once

#include "ehrhart/ehrhart.hpp"
#include "ehrhart/family.hpp"
#include "ehrhart/graphs.hpp"
#include "ehrhart/roots.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ehrhart {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int check_failed = 1;
inline constexpr int usage = 2;
}  // namespace exit_code

enum class OutputFormat { json, csv, text };

OutputFormat parse_output_format(const std::string& s);

struct RunConfig {
    RootTolerances tol{};
    GeometryLimits limits{};
    TheoremLimits theorem{};
    OutputFormat format = OutputFormat::text;
    unsigned jobs = 0;  // 0 = hardware concurrency
    std::uint64_t seed = kDefaultSeed;
    int max_n = 2;      // dilations used for the reciprocity spot-check
    bool verify = false;

    /// Throws std::invalid_argument when a tolerance is not positive or a limit is < 1.
    void validate() const;
};

struct CommandResult {
    nlohmann::json report;
    int exit = exit_code::ok;
};

/// Canonical serialization: sorted keys, compact, rationals already stored as strings.
std::string dump_canonical(const nlohmann::json& j);

nlohmann::json polynomial_json(const Polynomial& p);
nlohmann::json delta_json(const DeltaVector& delta);
nlohmann::json roots_json(const std::vector<ComplexRoot>& roots);
nlohmann::json root_report_json(const RootReport& r);
nlohmann::json certificate_json(const Certificate& c);
nlohmann::json graph_record_json(const GraphRecord& r);

/// Theorem check on (k, d): P, i(P, n), delta, roots, per-item verdicts, certificate.
CommandResult run_family(int d, int k, const RunConfig& cfg);

/// Ehrhart analysis of an arbitrary full-dimensional lattice polytope.
CommandResult run_ehrhart(const VPolytope& p, const RunConfig& cfg);

/// Symmetric edge polytope analysis of one connected graph.
CommandResult run_graph(const Graph& g, const RunConfig& cfg);

/// JSON-lines: one record per graph on 2..n_max vertices, then a summary record.
/// Returns the exit code.
int run_scan(int n_max, const RunConfig& cfg, std::ostream& out);

struct RootLocusSpec {
    int d_min = 0;  // family grid d_min..d_max, every valid k; empty when d_min > d_max
    int d_max = -1;
    std::optional<int> k_only;  // restrict the grid to one k
    std::vector<std::pair<std::string, Graph>> graphs;  // (source label, graph)
};

/// CSV with header source,d,k,re,im,is_real,on_critical_line. Returns the exit code.
int write_rootlocus_csv(const RootLocusSpec& spec, const RunConfig& cfg, std::ostream& out);

/// Human-readable rendering of a report produced by run_family / run_ehrhart / run_graph.
std::string render_text(const nlohmann::json& report);

}  // namespace ehrhart
