#include "ehrhart/graphs.hpp"

#include "ehrhart/parallel.hpp"

#include <algorithm>
#include <cstdint>
#include <istream>
#include <numeric>
#include <set>
#include <sstream>

namespace ehrhart {

namespace {

constexpr int kMaxCanonicalVertices = 8;
constexpr int kMaxLabeledVertices = 6;

/// Bit index of the pair (a, b), a < b, 0-based, in colexicographic order.
int pair_bit(int a, int b) { return b * (b - 1) / 2 + a; }

using AdjMatrix = std::vector<std::uint32_t>;  // row bitmasks, 0-based vertices

AdjMatrix adjacency(const Graph& g) {
    AdjMatrix adj(static_cast<std::size_t>(g.n_vertices()), 0);
    for (auto [i, j] : g.edges()) {
        adj[static_cast<std::size_t>(i - 1)] |= 1u << (j - 1);
        adj[static_cast<std::size_t>(j - 1)] |= 1u << (i - 1);
    }
    return adj;
}

/// Iterated degree refinement; the result depends only on the isomorphism class.
std::vector<int> refined_colors(const AdjMatrix& adj) {
    const std::size_t n = adj.size();
    std::vector<int> color(n);
    for (std::size_t v = 0; v < n; ++v) color[v] = __builtin_popcount(adj[v]);
    std::size_t classes = 0;
    while (true) {
        std::vector<std::vector<int>> sig(n);
        for (std::size_t v = 0; v < n; ++v) {
            sig[v].push_back(color[v]);
            std::vector<int> nb;
            for (std::size_t u = 0; u < n; ++u)
                if (adj[v] >> u & 1u) nb.push_back(color[u]);
            std::sort(nb.begin(), nb.end());
            sig[v].insert(sig[v].end(), nb.begin(), nb.end());
        }
        auto uniq = sig;
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        for (std::size_t v = 0; v < n; ++v)
            color[v] = static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), sig[v]) - uniq.begin());
        if (uniq.size() == classes) break;
        classes = uniq.size();
    }
    return color;
}

/// Minimal code over all relabelings that place color classes in increasing color order.
/// Returns the code and the position assigned to each vertex.
std::pair<std::uint32_t, std::vector<int>> canonical_code(const AdjMatrix& adj) {
    const int n = static_cast<int>(adj.size());
    auto color = refined_colors(adj);
    std::vector<int> order(static_cast<std::size_t>(n));  // order[pos] = vertex
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return color[a] < color[b]; });
    std::vector<std::pair<int, int>> cells;  // [begin, end) ranges of equal color
    for (int s = 0; s < n;) {
        int e = s;
        while (e < n && color[order[e]] == color[order[s]]) ++e;
        cells.emplace_back(s, e);
        s = e;
    }

    std::uint32_t best = UINT32_MAX;
    std::vector<int> best_order = order;
    auto code_of = [&](const std::vector<int>& ord) {
        std::uint32_t code = 0;
        for (int b = 1; b < n; ++b)
            for (int a = 0; a < b; ++a)
                if (adj[static_cast<std::size_t>(ord[a])] >> ord[b] & 1u) code |= 1u << pair_bit(a, b);
        return code;
    };
    // Odometer over permutations within each cell.
    for (auto& [s, e] : cells) std::sort(order.begin() + s, order.begin() + e);
    while (true) {
        std::uint32_t c = code_of(order);
        if (c < best) {
            best = c;
            best_order = order;
        }
        std::size_t ci = 0;
        for (; ci < cells.size(); ++ci) {
            auto [s, e] = cells[ci];
            if (std::next_permutation(order.begin() + s, order.begin() + e)) break;
        }
        if (ci == cells.size()) break;
    }
    std::vector<int> position(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) position[static_cast<std::size_t>(best_order[p])] = p;
    return {best, position};
}

Graph graph_from_code(int n, std::uint32_t code) {
    std::vector<Graph::Edge> edges;
    for (int b = 1; b < n; ++b)
        for (int a = 0; a < b; ++a)
            if (code >> pair_bit(a, b) & 1u) edges.emplace_back(a + 1, b + 1);
    return Graph(n, std::move(edges));
}

/// Canonical codes of all graphs (connected or not) on n vertices.
std::set<std::uint32_t> all_graph_codes(int n) {
    std::set<std::uint32_t> codes{0};
    for (int m = 2; m <= n; ++m) {
        std::set<std::uint32_t> next;
        for (std::uint32_t base : codes) {
            for (std::uint32_t mask = 0; mask < (1u << (m - 1)); ++mask) {
                std::uint32_t code = base;
                for (int a = 0; a < m - 1; ++a)
                    if (mask >> a & 1u) code |= 1u << pair_bit(a, m - 1);
                next.insert(canonical_code(adjacency(graph_from_code(m, code))).first);
            }
        }
        codes = std::move(next);
    }
    return codes;
}

}  // namespace

Graph::Graph(int n_vertices, std::vector<Edge> edges) : n_(n_vertices), edges_(std::move(edges)) {
    if (n_ < 1) throw std::invalid_argument("Graph: need at least one vertex");
    for (auto& [i, j] : edges_) {
        if (i == j) throw std::invalid_argument("Graph: loop at vertex " + std::to_string(i));
        if (i > j) std::swap(i, j);
        if (i < 1 || j > n_)
            throw std::invalid_argument("Graph: edge {" + std::to_string(i) + "," + std::to_string(j) +
                                        "} out of range 1.." + std::to_string(n_));
    }
    std::sort(edges_.begin(), edges_.end());
    auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end())
        throw std::invalid_argument("Graph: repeated edge {" + std::to_string(dup->first) + "," +
                                    std::to_string(dup->second) + "}");
}

std::optional<int> Graph::separated_vertex() const {
    std::vector<std::vector<int>> nb(static_cast<std::size_t>(n_) + 1);
    for (auto [i, j] : edges_) {
        nb[static_cast<std::size_t>(i)].push_back(j);
        nb[static_cast<std::size_t>(j)].push_back(i);
    }
    std::vector<bool> seen(static_cast<std::size_t>(n_) + 1, false);
    std::vector<int> stack{1};
    seen[1] = true;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u : nb[static_cast<std::size_t>(v)])
            if (!seen[static_cast<std::size_t>(u)]) {
                seen[static_cast<std::size_t>(u)] = true;
                stack.push_back(u);
            }
    }
    for (int v = 1; v <= n_; ++v)
        if (!seen[static_cast<std::size_t>(v)]) return v;
    return std::nullopt;
}

bool Graph::is_connected() const { return !separated_vertex().has_value(); }

std::string Graph::to_string() const {
    std::string s = "n=" + std::to_string(n_) + " {";
    for (std::size_t k = 0; k < edges_.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(edges_[k].first) + "-" + std::to_string(edges_[k].second);
    }
    return s + "}";
}

Graph path_graph(int n) {
    std::vector<Graph::Edge> e;
    for (int i = 1; i < n; ++i) e.emplace_back(i, i + 1);
    return Graph(n, std::move(e));
}

Graph cycle_graph(int n) {
    if (n < 3) throw std::invalid_argument("cycle_graph: need n >= 3");
    std::vector<Graph::Edge> e;
    for (int i = 1; i < n; ++i) e.emplace_back(i, i + 1);
    e.emplace_back(1, n);
    return Graph(n, std::move(e));
}

Graph complete_graph(int n) {
    std::vector<Graph::Edge> e;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) e.emplace_back(i, j);
    return Graph(n, std::move(e));
}

Graph complete_bipartite_graph(int a, int b) {
    std::vector<Graph::Edge> e;
    for (int i = 1; i <= a; ++i)
        for (int j = a + 1; j <= a + b; ++j) e.emplace_back(i, j);
    return Graph(a + b, std::move(e));
}

Graph star_graph(int n) {
    std::vector<Graph::Edge> e;
    for (int j = 2; j <= n; ++j) e.emplace_back(1, j);
    return Graph(n, std::move(e));
}

Graph parse_edge_file(std::istream& in) {
    std::vector<Graph::Edge> edges;
    std::string line;
    std::size_t lineno = 0;
    int n = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::vector<long> vals;
        std::string tok;
        while (ss >> tok) {
            std::size_t used = 0;
            long v = 0;
            try {
                v = std::stol(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size())
                throw std::invalid_argument("line " + std::to_string(lineno) + ": not an integer: '" + tok + "'");
            vals.push_back(v);
        }
        if (vals.empty()) continue;
        if (vals.size() != 2)
            throw std::invalid_argument("line " + std::to_string(lineno) + ": expected two vertex indices");
        if (vals[0] < 1 || vals[1] < 1 || vals[0] > 64 || vals[1] > 64)
            throw std::invalid_argument("line " + std::to_string(lineno) + ": vertex index out of range 1..64");
        edges.emplace_back(static_cast<int>(vals[0]), static_cast<int>(vals[1]));
        n = std::max({n, static_cast<int>(vals[0]), static_cast<int>(vals[1])});
    }
    if (edges.empty()) throw std::invalid_argument("edge file contains no edges");
    return Graph(n, std::move(edges));
}

VPolytope symmetric_edge_polytope(const Graph& g) {
    if (g.edges().empty()) throw GraphError("symmetric_edge_polytope: graph has no edges");
    if (auto v = g.separated_vertex())
        throw GraphError("symmetric_edge_polytope: graph is disconnected (vertex " + std::to_string(*v) +
                         " is not reachable from vertex 1)");
    const auto n = static_cast<std::size_t>(g.n_vertices());
    std::vector<LatticePoint> verts;
    std::set<LatticePoint> seen;
    for (auto [i, j] : g.edges()) {
        LatticePoint rho(n, 0);
        rho[static_cast<std::size_t>(i - 1)] = 1;
        rho[static_cast<std::size_t>(j - 1)] = -1;
        for (int sign : {1, -1}) {
            LatticePoint pt(rho.begin(), rho.end() - 1);  // drop the last coordinate
            for (auto& x : pt) x *= sign;
            if (seen.insert(pt).second) verts.push_back(std::move(pt));
        }
    }
    int rank = affine_rank(verts);
    if (rank != static_cast<int>(n) - 1) throw NotFullDimensional(rank, static_cast<int>(n) - 1);
    return VPolytope(n - 1, std::move(verts));
}

VPolytope crosspolytope(int d) {
    if (d < 1) throw std::invalid_argument("crosspolytope: d must be positive");
    std::vector<LatticePoint> verts;
    for (int i = 0; i < d; ++i)
        for (int s : {1, -1}) {
            LatticePoint v(static_cast<std::size_t>(d), 0);
            v[static_cast<std::size_t>(i)] = s;
            verts.push_back(std::move(v));
        }
    return VPolytope(static_cast<std::size_t>(d), std::move(verts));
}

DeltaVector tree_delta_expected(int d) {
    if (d < 1) throw std::invalid_argument("tree_delta_expected: d must be positive");
    std::vector<Integer> row;
    for (int i = 0; i <= d; ++i) {
        Integer c;
        mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(i));
        row.push_back(c);
    }
    return DeltaVector(std::move(row));
}

DeltaVector k2m_delta(int d) {
    if (d < 4) throw std::invalid_argument("k2m_delta: need d >= 4 for K(2, d-2)");
    Polynomial p = Polynomial({1, 2 * (d - 3), 1});
    for (int i = 0; i < d - 3; ++i) p *= Polynomial({1, 1});
    std::vector<Integer> coeffs;
    for (int i = 0; i <= d; ++i) coeffs.push_back(p.coeff(i).get_num());
    return DeltaVector(std::move(coeffs));
}

Graph canonical_form(const Graph& g) {
    if (g.n_vertices() > kMaxCanonicalVertices)
        throw std::invalid_argument("canonical_form: at most " + std::to_string(kMaxCanonicalVertices) +
                                    " vertices");
    return graph_from_code(g.n_vertices(), canonical_code(adjacency(g)).first);
}

std::vector<Graph> enumerate_connected_graphs(int n, bool dedup) {
    if (n < 1 || n > kMaxCanonicalVertices)
        throw std::invalid_argument("enumerate_connected_graphs: n must be in 1.." +
                                    std::to_string(kMaxCanonicalVertices));
    std::vector<Graph> out;
    if (dedup) {
        for (std::uint32_t code : all_graph_codes(n)) {
            Graph g = graph_from_code(n, code);
            if (g.is_connected()) out.push_back(std::move(g));
        }
        return out;
    }
    if (n > kMaxLabeledVertices)
        throw std::invalid_argument("enumerate_connected_graphs: labeled enumeration limited to n <= " +
                                    std::to_string(kMaxLabeledVertices));
    const int pairs = n * (n - 1) / 2;
    for (std::uint32_t code = 0; code < (1u << pairs); ++code) {
        Graph g = graph_from_code(n, code);
        if (g.is_connected()) out.push_back(std::move(g));
    }
    return out;
}

GraphRecord analyze_graph(const Graph& g, const GraphAnalysisOptions& options) {
    GraphRecord rec{g};
    VPolytope p = symmetric_edge_polytope(g);
    rec.dim = static_cast<int>(p.ambient_dim());
    rec.i_poly = ehrhart_by_interpolation(p, {options.jobs, {}});
    rec.delta = delta_from_ehrhart(rec.i_poly, rec.dim);
    rec.gorenstein = is_gorenstein(rec.delta);
    rec.violations = validate_delta(rec.delta);
    rec.report = classify_roots(find_roots_numeric(rec.i_poly, options.tol, options.seed), rec.dim, options.tol);
    rec.numeric_on_line = rec.report.max_critical_line_deviation <= options.tol.classify;
    // Odd-dimensional Gorenstein polytopes always have -1/2 as a root.
    std::vector<Rational> known;
    if (rec.dim % 2 == 1 && rec.i_poly(make_rational(-1, 2)) == 0) known.push_back(make_rational(-1, 2));
    rec.certificate = verify_critical_line_exact(rec.i_poly, known);
    rec.critical_line = rec.certificate.on_critical_line();
    return rec;
}

void scan_graphs(int n_max, const GraphAnalysisOptions& options, unsigned workers,
                 const std::function<void(const GraphRecord&)>& sink) {
    if (n_max < 2 || n_max > 7) throw std::invalid_argument("scan_graphs: n_max must be in 2..7");
    std::vector<Graph> graphs;
    for (int n = 2; n <= n_max; ++n) {
        auto level = enumerate_connected_graphs(n, true);
        graphs.insert(graphs.end(), level.begin(), level.end());
    }
    ordered_parallel_for<GraphRecord>(
        graphs.size(), workers,
        [&](std::size_t i) {
            try {
                return analyze_graph(graphs[i], options);
            } catch (const std::exception& e) {
                GraphRecord failed{graphs[i]};
                failed.error = e.what();
                return failed;
            }
        },
        [&](std::size_t, GraphRecord& rec) { sink(rec); });
}

std::vector<GraphRecord> scan_graphs(int n_max, const GraphAnalysisOptions& options, unsigned workers) {
    std::vector<GraphRecord> out;
    scan_graphs(n_max, options, workers, [&](const GraphRecord& r) { out.push_back(r); });
    return out;
}

}  // namespace ehrhart
