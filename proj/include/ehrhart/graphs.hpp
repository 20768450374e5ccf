#pragma once

#include "ehrhart/ehrhart.hpp"
#include "ehrhart/polytope.hpp"
#include "ehrhart/roots.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ehrhart {

/// Simple undirected graph on vertices 1..n_vertices.
class Graph {
public:
    using Edge = std::pair<int, int>;  // first < second

    /// Normalizes each edge to (min, max) and sorts. Throws std::invalid_argument on loops,
    /// repeated edges or out-of-range endpoints.
    Graph(int n_vertices, std::vector<Edge> edges);

    int n_vertices() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    bool is_connected() const;
    /// Some vertex unreachable from vertex 1, if any.
    std::optional<int> separated_vertex() const;
    std::string to_string() const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    int n_;
    std::vector<Edge> edges_;
};

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
Graph complete_bipartite_graph(int a, int b);
Graph star_graph(int n);

/// "i j" per line, 1-based; '#' comments and blank lines ignored. The vertex count is the
/// largest index seen.
Graph parse_edge_file(std::istream& in);

/// conv{+-(e_i - e_j)} projected to Z^(n-1) by dropping the last coordinate.
VPolytope symmetric_edge_polytope(const Graph& g);

/// conv{+-e_1, ..., +-e_d}
VPolytope crosspolytope(int d);

/// (C(d,0), ..., C(d,d))
DeltaVector tree_delta_expected(int d);

/// Coefficients of (1 + x)^(d-3) (1 + 2(d-3)x + x^2), padded to length d + 1.
DeltaVector k2m_delta(int d);

/// Connected simple graphs on n labeled vertices; with dedup, one canonical representative
/// per isomorphism class (minimal adjacency bit string), in canonical order.
std::vector<Graph> enumerate_connected_graphs(int n, bool dedup);

/// Canonical relabeling of g (the representative enumerate_connected_graphs would return).
Graph canonical_form(const Graph& g);

struct GraphRecord {
    explicit GraphRecord(Graph g) : graph(std::move(g)) {}

    Graph graph;
    int dim = 0;
    Polynomial i_poly;
    DeltaVector delta;
    bool gorenstein = false;
    std::vector<DeltaViolation> violations;
    RootReport report;
    Certificate certificate;
    bool numeric_on_line = false;  // every root within tol.classify of Re = -1/2
    bool critical_line = false;    // exact verdict
    std::optional<std::string> error;
};

struct GraphAnalysisOptions {
    RootTolerances tol{};
    std::uint64_t seed = kDefaultSeed;
    unsigned jobs = 1;  // lattice counting threads
};

/// Ehrhart polynomial, delta-vector, roots and exact critical-line certificate of P_G.
GraphRecord analyze_graph(const Graph& g, const GraphAnalysisOptions& options = {});

/// Analyzes every connected graph on 2..n_max vertices (up to isomorphism), emitting records
/// in enumeration order. Failures are recorded per graph and the scan continues.
void scan_graphs(int n_max, const GraphAnalysisOptions& options, unsigned workers,
                 const std::function<void(const GraphRecord&)>& sink);

std::vector<GraphRecord> scan_graphs(int n_max, const GraphAnalysisOptions& options = {}, unsigned workers = 1);

}  // namespace ehrhart
