#pragma once
// Test-only reference implementations. Deliberately naive and independent of the library:
// no facet enumeration, no interpolation, no Sturm chains.

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

namespace oracle {

using i128 = __int128;
using Point = std::vector<std::int64_t>;

inline i128 det_int(std::vector<std::vector<i128>> m) {
    // Bareiss fraction-free elimination.
    const std::size_t n = m.size();
    i128 sign = 1, prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && m[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(m[r], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

/// A full-dimensional simplex with integer barycentric test via the adjugate.
class Simplex {
public:
    Simplex(const std::vector<Point>& verts, std::int64_t scale = 1) {
        d_ = verts.front().size();
        base_ = verts[0];
        for (auto& x : base_) x *= scale;
        std::vector<std::vector<i128>> a(d_, std::vector<i128>(d_));
        for (std::size_t j = 0; j < d_; ++j)
            for (std::size_t i = 0; i < d_; ++i) a[i][j] = i128(verts[j + 1][i] - verts[0][i]) * scale;
        det_ = det_int(a);
        adj_.assign(d_, std::vector<i128>(d_));
        if (det_ == 0) return;
        // adj[j][i] = (-1)^(i+j) minor(i, j)
        for (std::size_t i = 0; i < d_; ++i)
            for (std::size_t j = 0; j < d_; ++j) {
                std::vector<std::vector<i128>> minor;
                for (std::size_t r = 0; r < d_; ++r) {
                    if (r == i) continue;
                    std::vector<i128> row;
                    for (std::size_t c = 0; c < d_; ++c)
                        if (c != j) row.push_back(a[r][c]);
                    minor.push_back(row);
                }
                i128 m = d_ == 1 ? 1 : det_int(minor);
                adj_[j][i] = ((i + j) % 2 ? -m : m);
            }
    }

    bool degenerate() const { return det_ == 0; }

    /// x scaled like the vertices. strict: all barycentric coordinates positive.
    bool contains(const std::vector<i128>& x, bool strict) const {
        const i128 s = det_ > 0 ? 1 : -1;
        i128 total = 0;
        for (std::size_t j = 0; j < d_; ++j) {
            i128 l = 0;
            for (std::size_t i = 0; i < d_; ++i) l += adj_[j][i] * (x[i] - base_[i]);
            l *= s;
            if (strict ? l <= 0 : l < 0) return false;
            total += l;
        }
        i128 rest = det_ * s - total;
        return strict ? rest > 0 : rest >= 0;
    }

private:
    std::size_t d_ = 0;
    std::vector<std::int64_t> base_;
    std::vector<std::vector<i128>> adj_;
    i128 det_ = 0;
};

/// Closed membership in conv(verts) by Caratheodory: some (d+1)-subset simplex contains x.
class Hull {
public:
    explicit Hull(const std::vector<Point>& verts, std::int64_t scale = 1) : scale_(scale) {
        const std::size_t d = verts.front().size();
        std::vector<std::size_t> idx(d + 1);
        std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
            if (pos == d + 1) {
                std::vector<Point> s;
                for (auto i : idx) s.push_back(verts[i]);
                Simplex sx(s, scale);
                if (!sx.degenerate()) simplices_.push_back(std::move(sx));
                return;
            }
            for (std::size_t i = start; i < verts.size(); ++i) {
                idx[pos] = i;
                rec(pos + 1, i + 1);
            }
        };
        rec(0, 0);
        if (simplices_.empty()) throw std::invalid_argument("oracle: hull is not full-dimensional");
    }

    bool contains(const std::vector<i128>& x) const {
        for (const auto& s : simplices_)
            if (s.contains(x, false)) return true;
        return false;
    }

private:
    std::int64_t scale_;
    std::vector<Simplex> simplices_;
};

inline std::vector<Point> dilate(const std::vector<Point>& verts, std::int64_t n) {
    auto out = verts;
    for (auto& v : out)
        for (auto& x : v) x *= n;
    return out;
}

inline void for_each_box_point(const std::vector<Point>& verts, const std::function<void(const Point&)>& f) {
    const std::size_t d = verts.front().size();
    Point lo(d, INT64_MAX), hi(d, INT64_MIN);
    for (const auto& v : verts)
        for (std::size_t i = 0; i < d; ++i) {
            lo[i] = std::min(lo[i], v[i]);
            hi[i] = std::max(hi[i], v[i]);
        }
    Point x = lo;
    while (true) {
        f(x);
        std::size_t i = 0;
        while (i < d && x[i] == hi[i]) x[i] = lo[i], ++i;
        if (i == d) return;
        ++x[i];
    }
}

inline std::vector<i128> widen(const Point& p, std::int64_t scale = 1) {
    std::vector<i128> out;
    for (auto x : p) out.push_back(i128(x) * scale);
    return out;
}

/// |nP cap Z^d| by box scan and Caratheodory membership.
inline std::uint64_t count_closed(const std::vector<Point>& verts, std::int64_t n) {
    auto dv = dilate(verts, n);
    Hull h(dv);
    std::uint64_t c = 0;
    for_each_box_point(dv, [&](const Point& x) { c += h.contains(widen(x)); });
    return c;
}

/// x is interior iff x +- e_i / M lies in nP for every i; M exceeds every primitive facet
/// normal entry of the small polytopes under test.
inline constexpr std::int64_t kInteriorScale = 1 << 12;

inline std::vector<Point> interior_points(const std::vector<Point>& verts, std::int64_t n) {
    auto dv = dilate(verts, n);
    Hull h(dv, kInteriorScale);
    std::vector<Point> out;
    for_each_box_point(dv, [&](const Point& x) {
        auto y = widen(x, kInteriorScale);
        for (std::size_t i = 0; i < y.size(); ++i)
            for (int s : {-1, 1}) {
                y[i] += s;
                bool in = h.contains(y);
                y[i] -= s;
                if (!in) return;
            }
        out.push_back(x);
    });
    return out;
}

inline std::uint64_t count_interior(const std::vector<Point>& verts, std::int64_t n) {
    return interior_points(verts, n).size();
}

/// Simplex-only fast path (strict barycentric test is exact for simplices).
inline std::uint64_t count_simplex(const std::vector<Point>& verts, std::int64_t n, bool interior) {
    auto dv = dilate(verts, n);
    Simplex s(dv);
    if (s.degenerate()) throw std::invalid_argument("oracle: degenerate simplex");
    std::uint64_t c = 0;
    for_each_box_point(dv, [&](const Point& x) { c += s.contains(widen(x), interior); });
    return c;
}

/// Coefficients of (1 - t)^(d+1) * sum_n counts[n] t^n, truncated at t^d.
inline std::vector<long long> delta_from_counts(const std::vector<std::uint64_t>& counts, int d) {
    std::vector<long long> one_minus_t(d + 2, 0);
    one_minus_t[0] = 1;
    for (int r = 0; r <= d; ++r)  // multiply by (1 - t)
        for (int j = r + 1; j >= 1; --j) one_minus_t[j] -= one_minus_t[j - 1];
    std::vector<long long> out(d + 1, 0);
    for (int i = 0; i <= d; ++i)
        for (int j = 0; j <= i; ++j) out[i] += one_minus_t[j] * static_cast<long long>(counts[i - j]);
    return out;
}

/// C(m, r) as an exact integer, zero when 0 <= m < r; m may be negative (generalized).
inline i128 binom(std::int64_t m, int r) {
    i128 num = 1, den = 1;
    for (int i = 0; i < r; ++i) {
        num *= (m - i);
        den *= (i + 1);
    }
    return num / den;
}

// ---- graphs --------------------------------------------------------------------------------

using Edges = std::vector<std::pair<int, int>>;  // 1-based

inline std::vector<std::vector<int>> distances(int n, const Edges& edges) {
    const int inf = 1 << 20;
    std::vector<std::vector<int>> dist(n, std::vector<int>(n, inf));
    for (int i = 0; i < n; ++i) dist[i][i] = 0;
    for (auto [a, b] : edges) dist[a - 1][b - 1] = dist[b - 1][a - 1] = 1;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);
    return dist;
}

/// Smallest cost of moving the positive part of x onto its negative part along graph
/// distances, by trying every matching of unit masses. This is the gauge of the symmetric
/// edge polytope, so tP = {x : sum x = 0, cost(x) <= t}.
inline int transport_cost(const std::vector<int>& x, const std::vector<std::vector<int>>& dist) {
    std::vector<int> src, dst;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (int c = 0; c < x[i]; ++c) src.push_back(static_cast<int>(i));
        for (int c = 0; c < -x[i]; ++c) dst.push_back(static_cast<int>(i));
    }
    std::sort(dst.begin(), dst.end());
    int best = 1 << 30;
    do {
        int c = 0;
        for (std::size_t i = 0; i < src.size(); ++i) c += dist[src[i]][dst[i]];
        best = std::min(best, c);
    } while (std::next_permutation(dst.begin(), dst.end()));
    return best;
}

/// |t P_G cap Z^n| for t = 0..t_max, counted in the zero-sum hyperplane.
inline std::vector<std::uint64_t> sep_counts(int n, const Edges& edges, int t_max) {
    auto dist = distances(n, edges);
    std::vector<std::uint64_t> counts(t_max + 1, 0);
    std::vector<int> x(n, -t_max);
    // any point of tP has |x_i| <= t and mass (sum of positive parts) <= t
    while (true) {
        int sum = 0, mass = 0;
        for (int v : x) sum += v, mass += std::max(v, 0);
        if (sum == 0 && mass <= t_max) {
            int c = transport_cost(x, dist);
            for (int t = c; t <= t_max; ++t) ++counts[t];
        }
        int i = 0;
        while (i < n && x[i] == t_max) x[i] = -t_max, ++i;
        if (i == n) break;
        ++x[i];
    }
    return counts;
}

inline bool connected(int n, std::uint64_t mask, const std::vector<std::pair<int, int>>& pairs) {
    std::vector<int> comp(n);
    std::iota(comp.begin(), comp.end(), 0);
    std::function<int(int)> find = [&](int a) { return comp[a] == a ? a : comp[a] = find(comp[a]); };
    for (std::size_t e = 0; e < pairs.size(); ++e)
        if (mask >> e & 1) comp[find(pairs[e].first)] = find(pairs[e].second);
    for (int i = 1; i < n; ++i)
        if (find(i) != find(0)) return false;
    return true;
}

/// Number of isomorphism classes of connected graphs on exactly n vertices, by brute force
/// over all labeled graphs and all relabelings.
inline std::size_t connected_classes(int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    std::vector<std::vector<int>> index(n, std::vector<int>(n));
    for (std::size_t e = 0; e < pairs.size(); ++e)
        index[pairs[e].first][pairs[e].second] = index[pairs[e].second][pairs[e].first] = static_cast<int>(e);
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::set<std::uint64_t> classes;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << pairs.size()); ++mask) {
        if (!connected(n, mask, pairs)) continue;
        std::uint64_t best = UINT64_MAX;
        for (const auto& q : perms) {
            std::uint64_t m = 0;
            for (std::size_t e = 0; e < pairs.size(); ++e)
                if (mask >> e & 1) m |= std::uint64_t(1) << index[q[pairs[e].first]][q[pairs[e].second]];
            best = std::min(best, m);
        }
        classes.insert(best);
    }
    return classes.size();
}

// ---- roots ---------------------------------------------------------------------------------

/// Eigenvalues of the companion matrix; coefficients constant-first.
inline std::vector<std::complex<double>> companion_roots(const std::vector<double>& c) {
    const int n = static_cast<int>(c.size()) - 1;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) m(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) m(i, n - 1) = -c[i] / c[n];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m.cast<std::complex<double>>());
    std::vector<std::complex<double>> out(es.eigenvalues().begin(), es.eigenvalues().end());
    std::sort(out.begin(), out.end(), [](auto a, auto b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return out;
}

}  // namespace oracle
