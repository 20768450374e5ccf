#include "ehrhart/polytope.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <istream>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

namespace ehrhart {

namespace {

using Int128 = __int128;
constexpr Int128 kSafeMagnitude = Int128(1) << 62;

std::int64_t to_int64(const mpz_class& z) {
    if (!z.fits_slong_p()) throw OverflowError("facet coefficient exceeds 64-bit range");
    return z.get_si();
}

/// Rank of an integer matrix over Q.
int matrix_rank(std::vector<std::vector<mpq_class>> m) {
    if (m.empty()) return 0;
    const std::size_t cols = m[0].size();
    int rank = 0;
    for (std::size_t c = 0; c < cols && rank < static_cast<int>(m.size()); ++c) {
        std::size_t pivot = static_cast<std::size_t>(rank);
        while (pivot < m.size() && m[pivot][c] == 0) ++pivot;
        if (pivot == m.size()) continue;
        std::swap(m[pivot], m[static_cast<std::size_t>(rank)]);
        auto& prow = m[static_cast<std::size_t>(rank)];
        for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < m.size(); ++r) {
            if (m[r][c] == 0) continue;
            mpq_class f = m[r][c] / prow[c];
            for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * prow[k];
        }
        ++rank;
    }
    return rank;
}

using ZVec = std::vector<mpz_class>;

void make_primitive(ZVec& v) {
    mpz_class g = 0;
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1)
        for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

mpz_class dot(const ZVec& a, const ZVec& b) {
    mpz_class s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

struct Ray {
    ZVec coords;
    std::uint64_t zeros = 0;  // bit j set iff generator j is tight
};

int popcount(std::uint64_t x) { return __builtin_popcountll(x); }

/// Per-row data for box enumeration with interval propagation.
class BoxEnumerator {
public:
    BoxEnumerator(const HRep& h, std::vector<std::int64_t> lo, std::vector<std::int64_t> hi,
                  std::int64_t dilation, CountMode mode)
        : dim_(h.ambient_dim), lo_(std::move(lo)), hi_(std::move(hi)) {
        const std::size_t m = h.rows.size();
        normals_.reserve(m * dim_);
        for (const auto& f : h.rows) {
            Int128 r = Int128(f.rhs) * dilation - (mode == CountMode::interior ? 1 : 0);
            check(r);
            rhs_.push_back(static_cast<std::int64_t>(r));
            for (auto a : f.normal) normals_.push_back(a);
        }
        // rem_min_[t*m + r] = min over the box of sum_{j>=t} a_rj x_j
        rem_min_.assign((dim_ + 1) * m, 0);
        for (std::size_t t = dim_; t-- > 0;) {
            for (std::size_t r = 0; r < m; ++r) {
                Int128 a = normals_[r * dim_ + t];
                Int128 v = std::min(a * lo_[t], a * hi_[t]);
                Int128 total = rem_min_[(t + 1) * m + r] + v;
                Int128 maxmag = 0;
                for (std::size_t j = t; j < dim_; ++j) {
                    Int128 aj = normals_[r * dim_ + j];
                    Int128 bound = std::max(aj * lo_[j] < 0 ? -(aj * lo_[j]) : aj * lo_[j],
                                            aj * hi_[j] < 0 ? -(aj * hi_[j]) : aj * hi_[j]);
                    maxmag += bound;
                }
                check(maxmag + (rhs_[r] < 0 ? -Int128(rhs_[r]) : Int128(rhs_[r])));
                rem_min_[t * m + r] = static_cast<std::int64_t>(total);
            }
        }
    }

    std::uint64_t count(std::int64_t first_lo, std::int64_t first_hi) const {
        std::vector<std::int64_t> partial(rhs_.size(), 0);
        std::uint64_t total = 0;
        LatticePoint pt(dim_);
        walk(0, first_lo, first_hi, partial, pt, &total, nullptr);
        return total;
    }

    void visit(const std::function<void(const LatticePoint&)>& fn) const {
        std::vector<std::int64_t> partial(rhs_.size(), 0);
        LatticePoint pt(dim_);
        walk(0, lo_.empty() ? 0 : lo_[0], hi_.empty() ? -1 : hi_[0], partial, pt, nullptr, &fn);
    }

    std::int64_t lo0() const { return lo_[0]; }
    std::int64_t hi0() const { return hi_[0]; }

private:
    static void check(Int128 v) {
        if (v >= kSafeMagnitude || v <= -kSafeMagnitude)
            throw OverflowError("lattice enumeration magnitudes exceed 62 bits");
    }

    static std::int64_t floor_div(std::int64_t a, std::int64_t b) {
        std::int64_t q = a / b;
        if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
        return q;
    }
    static std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

    // Feasible integer range of coordinate t given the fixed prefix.
    bool range(std::size_t t, const std::vector<std::int64_t>& partial, std::int64_t& lo,
               std::int64_t& hi) const {
        const std::size_t m = rhs_.size();
        for (std::size_t r = 0; r < m; ++r) {
            std::int64_t a = normals_[r * dim_ + t];
            std::int64_t slack = rhs_[r] - partial[r] - rem_min_[(t + 1) * m + r];
            if (a == 0) {
                if (slack < 0) return false;
            } else if (a > 0) {
                hi = std::min(hi, floor_div(slack, a));
            } else {
                lo = std::max(lo, ceil_div(slack, a));
            }
            if (lo > hi) return false;
        }
        return true;
    }

    void walk(std::size_t t, std::int64_t lo, std::int64_t hi, std::vector<std::int64_t>& partial,
              LatticePoint& pt, std::uint64_t* total,
              const std::function<void(const LatticePoint&)>* fn) const {
        if (!range(t, partial, lo, hi)) return;
        const std::size_t m = rhs_.size();
        if (t + 1 == dim_ && total) {
            *total += static_cast<std::uint64_t>(hi - lo + 1);
            return;
        }
        for (std::int64_t x = lo; x <= hi; ++x) {
            pt[t] = x;
            if (t + 1 == dim_) {
                (*fn)(pt);
                continue;
            }
            for (std::size_t r = 0; r < m; ++r) partial[r] += normals_[r * dim_ + t] * x;
            walk(t + 1, lo_[t + 1], hi_[t + 1], partial, pt, total, fn);
            for (std::size_t r = 0; r < m; ++r) partial[r] -= normals_[r * dim_ + t] * x;
        }
    }

    std::size_t dim_;
    std::vector<std::int64_t> lo_, hi_;
    std::vector<std::int64_t> normals_;  // row-major
    std::vector<std::int64_t> rhs_;
    std::vector<std::int64_t> rem_min_;
};

void bounding_box(const VPolytope& p, std::int64_t dilation, std::vector<std::int64_t>& lo,
                  std::vector<std::int64_t>& hi) {
    const std::size_t d = p.ambient_dim();
    lo.assign(d, 0);
    hi.assign(d, 0);
    for (std::size_t j = 0; j < d; ++j) {
        std::int64_t mn = p.vertices()[0][j], mx = mn;
        for (const auto& v : p.vertices()) {
            mn = std::min(mn, v[j]);
            mx = std::max(mx, v[j]);
        }
        Int128 l = Int128(mn) * dilation, h = Int128(mx) * dilation;
        if (l <= -kSafeMagnitude || h >= kSafeMagnitude) throw OverflowError("bounding box exceeds 62 bits");
        lo[j] = static_cast<std::int64_t>(l);
        hi[j] = static_cast<std::int64_t>(h);
    }
}

}  // namespace

NotFullDimensional::NotFullDimensional(int affine_rank, int ambient_dim)
    : GeometryError("polytope is not full-dimensional: affine rank " + std::to_string(affine_rank) +
                    " in ambient dimension " + std::to_string(ambient_dim)),
      affine_rank_(affine_rank),
      ambient_dim_(ambient_dim) {}

InteriorPointError::InteriorPointError(std::size_t count)
    : GeometryError(count == 0 ? std::string("no interior point")
                               : "interior point not unique: " + std::to_string(count) + " found"),
      count_(count) {}

VPolytope::VPolytope(std::size_t ambient_dim, std::vector<LatticePoint> vertices)
    : ambient_dim_(ambient_dim), vertices_(std::move(vertices)) {
    if (ambient_dim_ == 0) throw std::invalid_argument("VPolytope: ambient dimension must be positive");
    if (vertices_.empty()) throw std::invalid_argument("VPolytope: no vertices");
    std::set<LatticePoint> seen;
    for (const auto& v : vertices_) {
        if (v.size() != ambient_dim_)
            throw std::invalid_argument("VPolytope: vertex " + format_point(v) + " has dimension " +
                                        std::to_string(v.size()) + ", expected " +
                                        std::to_string(ambient_dim_));
        if (!seen.insert(v).second) throw std::invalid_argument("VPolytope: duplicate vertex " + format_point(v));
    }
}

namespace {
std::size_t first_dim(const std::vector<LatticePoint>& v) { return v.empty() ? 0 : v.front().size(); }
}  // namespace

VPolytope::VPolytope(const std::vector<LatticePoint>& vertices) : VPolytope(first_dim(vertices), vertices) {}

int affine_rank(const std::vector<LatticePoint>& points) {
    if (points.empty()) return -1;
    std::vector<std::vector<mpq_class>> m;
    for (std::size_t i = 1; i < points.size(); ++i) {
        std::vector<mpq_class> row(points[i].size());
        for (std::size_t j = 0; j < row.size(); ++j)
            row[j] = mpq_class(mpz_class(static_cast<long>(points[i][j])) - static_cast<long>(points[0][j]));
        m.push_back(std::move(row));
    }
    return matrix_rank(std::move(m));
}

HRep facet_enumeration(const VPolytope& p, const GeometryLimits& limits) {
    const std::size_t d = p.ambient_dim();
    const auto& verts = p.vertices();
    if (d > limits.max_dim)
        throw LimitExceeded("facet enumeration: dimension " + std::to_string(d) + " exceeds limit " +
                            std::to_string(limits.max_dim));
    if (verts.size() > limits.max_vertices || verts.size() > 64)
        throw LimitExceeded("facet enumeration: " + std::to_string(verts.size()) + " vertices exceed limit " +
                            std::to_string(std::min<std::size_t>(limits.max_vertices, 64)));
    int rank = affine_rank(verts);
    if (rank != static_cast<int>(d)) throw NotFullDimensional(rank, static_cast<int>(d));

    // Homogenized generators (1, v); facets are extreme rays of {y : g.y >= 0 for all g}.
    const std::size_t D = d + 1;
    std::vector<ZVec> gens;
    for (const auto& v : verts) {
        ZVec g(D);
        g[0] = 1;
        for (std::size_t j = 0; j < d; ++j) g[j + 1] = static_cast<long>(v[j]);
        gens.push_back(std::move(g));
    }

    // Greedy basis of D independent generators.
    std::vector<std::size_t> basis;
    {
        std::vector<std::vector<mpq_class>> rows;
        for (std::size_t i = 0; i < gens.size() && basis.size() < D; ++i) {
            std::vector<mpq_class> row(gens[i].begin(), gens[i].end());
            rows.push_back(row);
            if (matrix_rank(rows) == static_cast<int>(rows.size()))
                basis.push_back(i);
            else
                rows.pop_back();
        }
    }

    // Initial rays: columns of B^{-1}, via Gauss-Jordan on [B | I].
    std::vector<std::vector<mpq_class>> aug(D, std::vector<mpq_class>(2 * D));
    for (std::size_t r = 0; r < D; ++r) {
        for (std::size_t c = 0; c < D; ++c) aug[r][c] = mpq_class(gens[basis[r]][c]);
        aug[r][D + r] = 1;
    }
    for (std::size_t c = 0; c < D; ++c) {
        std::size_t piv = c;
        while (aug[piv][c] == 0) ++piv;
        std::swap(aug[piv], aug[c]);
        mpq_class inv = 1 / aug[c][c];
        for (auto& x : aug[c]) x *= inv;
        for (std::size_t r = 0; r < D; ++r) {
            if (r == c || aug[r][c] == 0) continue;
            mpq_class f = aug[r][c];
            for (std::size_t k = 0; k < 2 * D; ++k) aug[r][k] -= f * aug[c][k];
        }
    }
    std::uint64_t processed = 0;
    for (auto b : basis) processed |= std::uint64_t(1) << b;

    std::vector<Ray> rays;
    for (std::size_t i = 0; i < D; ++i) {
        mpz_class den_lcm = 1;
        for (std::size_t r = 0; r < D; ++r)
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), aug[r][D + i].get_den_mpz_t());
        Ray ray;
        ray.coords.resize(D);
        for (std::size_t r = 0; r < D; ++r) {
            mpq_class scaled = aug[r][D + i] * den_lcm;
            ray.coords[r] = scaled.get_num();
        }
        make_primitive(ray.coords);
        for (std::size_t r = 0; r < D; ++r)
            if (r != i) ray.zeros |= std::uint64_t(1) << basis[r];
        rays.push_back(std::move(ray));
    }

    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        if (processed & (std::uint64_t(1) << gi)) continue;
        const auto& g = gens[gi];
        std::vector<mpz_class> vals(rays.size());
        std::vector<std::size_t> pos, neg;
        std::vector<Ray> next;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            vals[r] = dot(g, rays[r].coords);
            int s = sgn(vals[r]);
            if (s > 0) pos.push_back(r);
            if (s < 0) neg.push_back(r);
            if (s >= 0) {
                Ray kept = rays[r];
                if (s == 0) kept.zeros |= std::uint64_t(1) << gi;
                next.push_back(std::move(kept));
            }
        }
        for (auto ip : pos) {
            for (auto in : neg) {
                std::uint64_t common = rays[ip].zeros & rays[in].zeros;
                if (popcount(common) < static_cast<int>(D) - 2) continue;
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
                    if (r == ip || r == in) continue;
                    if ((rays[r].zeros & common) == common) adjacent = false;
                }
                if (!adjacent) continue;
                Ray nr;
                nr.coords.resize(D);
                for (std::size_t k = 0; k < D; ++k)
                    nr.coords[k] = vals[ip] * rays[in].coords[k] - vals[in] * rays[ip].coords[k];
                make_primitive(nr.coords);
                nr.zeros = common | (std::uint64_t(1) << gi);
                next.push_back(std::move(nr));
            }
        }
        rays = std::move(next);
        processed |= std::uint64_t(1) << gi;
    }

    HRep h;
    h.ambient_dim = d;
    std::set<Facet> rows;
    for (const auto& ray : rays) {
        // y = (b, c) with b + c.x >= 0  <=>  -c.x <= b
        ZVec normal(d);
        mpz_class g = 0;
        for (std::size_t j = 0; j < d; ++j) {
            normal[j] = -ray.coords[j + 1];
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), normal[j].get_mpz_t());
        }
        if (g == 0) throw GeometryError("facet enumeration produced a zero normal");
        Facet f;
        for (auto& x : normal) f.normal.push_back(to_int64(x / g));
        mpz_class rhs = ray.coords[0];
        if (rhs % g != 0) throw GeometryError("facet right-hand side not integral");
        f.rhs = to_int64(rhs / g);
        rows.insert(std::move(f));
    }
    h.rows.assign(rows.begin(), rows.end());
    return h;
}

bool contains(const HRep& h, const LatticePoint& pt, bool strict) {
    if (pt.size() != h.ambient_dim)
        throw std::invalid_argument("contains: point dimension " + std::to_string(pt.size()) +
                                    " does not match " + std::to_string(h.ambient_dim));
    for (const auto& f : h.rows) {
        Int128 s = 0;
        for (std::size_t j = 0; j < pt.size(); ++j) s += Int128(f.normal[j]) * pt[j];
        if (strict ? !(s < f.rhs) : !(s <= f.rhs)) return false;
    }
    return true;
}

void enumerate_lattice_points(const HRep& h, const std::vector<std::int64_t>& box_lo,
                              const std::vector<std::int64_t>& box_hi, std::int64_t dilation,
                              CountMode mode, const std::function<void(const LatticePoint&)>& visit) {
    if (box_lo.size() != h.ambient_dim || box_hi.size() != h.ambient_dim)
        throw std::invalid_argument("enumerate_lattice_points: box dimension mismatch");
    BoxEnumerator e(h, box_lo, box_hi, dilation, mode);
    e.visit(visit);
}

std::uint64_t count_lattice_points(const VPolytope& p, const HRep& h, std::int64_t dilation,
                                   CountMode mode, unsigned jobs) {
    if (dilation < 1) throw std::invalid_argument("count_lattice_points: dilation must be >= 1");
    std::vector<std::int64_t> lo, hi;
    bounding_box(p, dilation, lo, hi);
    BoxEnumerator e(h, lo, hi, dilation, mode);
    const std::int64_t span = e.hi0() - e.lo0() + 1;
    if (jobs <= 1 || span < 2) return e.count(e.lo0(), e.hi0());

    const auto parts = static_cast<std::int64_t>(std::min<std::int64_t>(jobs, span));
    std::vector<std::uint64_t> partial(static_cast<std::size_t>(parts), 0);
    std::vector<std::thread> workers;
    for (std::int64_t i = 0; i < parts; ++i) {
        std::int64_t a = e.lo0() + span * i / parts;
        std::int64_t b = e.lo0() + span * (i + 1) / parts - 1;
        workers.emplace_back([&e, &partial, i, a, b] { partial[static_cast<std::size_t>(i)] = e.count(a, b); });
    }
    for (auto& w : workers) w.join();
    return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

std::uint64_t count_lattice_points(const VPolytope& p, std::int64_t dilation, CountMode mode, unsigned jobs,
                                   const GeometryLimits& limits) {
    return count_lattice_points(p, facet_enumeration(p, limits), dilation, mode, jobs);
}

std::vector<LatticePoint> interior_lattice_points(const VPolytope& p, const GeometryLimits& limits) {
    HRep h = facet_enumeration(p, limits);
    std::vector<std::int64_t> lo, hi;
    bounding_box(p, 1, lo, hi);
    std::vector<LatticePoint> out;
    enumerate_lattice_points(h, lo, hi, 1, CountMode::interior, [&](const LatticePoint& x) { out.push_back(x); });
    return out;
}

LatticePoint find_unique_interior_point(const VPolytope& p, const GeometryLimits& limits) {
    auto pts = interior_lattice_points(p, limits);
    if (pts.size() != 1) throw InteriorPointError(pts.size());
    return pts.front();
}

VPolytope dilate_translate(const VPolytope& p, std::int64_t factor, const LatticePoint& shift) {
    if (shift.size() != p.ambient_dim())
        throw std::invalid_argument("dilate_translate: shift dimension " + std::to_string(shift.size()) +
                                    " does not match " + std::to_string(p.ambient_dim()));
    if (factor < 1) throw std::invalid_argument("dilate_translate: factor must be positive");
    std::vector<LatticePoint> out;
    out.reserve(p.vertices().size());
    for (const auto& v : p.vertices()) {
        LatticePoint w(v.size());
        for (std::size_t j = 0; j < v.size(); ++j) {
            Int128 x = Int128(factor) * v[j] - shift[j];
            if (x >= kSafeMagnitude || x <= -kSafeMagnitude) throw OverflowError("dilate_translate overflow");
            w[j] = static_cast<std::int64_t>(x);
        }
        out.push_back(std::move(w));
    }
    return VPolytope(p.ambient_dim(), std::move(out));
}

bool is_fano(const VPolytope& p, const GeometryLimits& limits) {
    auto pts = interior_lattice_points(p, limits);
    return pts.size() == 1 &&
           std::all_of(pts[0].begin(), pts[0].end(), [](std::int64_t x) { return x == 0; });
}

VPolytope parse_vertex_file(std::istream& in) {
    std::vector<LatticePoint> verts;
    std::set<LatticePoint> seen;
    std::string line;
    std::size_t lineno = 0;
    std::size_t dim = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ss(line);
        LatticePoint v;
        std::string tok;
        while (ss >> tok) {
            std::size_t used = 0;
            long long x = 0;
            try {
                x = std::stoll(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size())
                throw std::invalid_argument("line " + std::to_string(lineno) + ": not an integer: '" + tok + "'");
            v.push_back(x);
        }
        if (dim == 0) dim = v.size();
        if (v.size() != dim)
            throw std::invalid_argument("line " + std::to_string(lineno) + ": expected " + std::to_string(dim) +
                                        " coordinates, got " + std::to_string(v.size()));
        if (!seen.insert(v).second)
            throw std::invalid_argument("line " + std::to_string(lineno) + ": duplicate vertex " + format_point(v));
        verts.push_back(std::move(v));
    }
    if (verts.empty()) throw std::invalid_argument("vertex file contains no vertices");
    return VPolytope(dim, std::move(verts));
}

std::string format_point(const LatticePoint& pt) {
    std::string s = "(";
    for (std::size_t i = 0; i < pt.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(pt[i]);
    }
    return s + ")";
}

}  // namespace ehrhart
