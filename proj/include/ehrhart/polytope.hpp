#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace ehrhart {

/// Integer point of Z^N. Coordinates are machine integers; every routine that combines
/// them checks its intermediate magnitudes and throws OverflowError instead of wrapping.
using LatticePoint = std::vector<std::int64_t>;

class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotFullDimensional : public GeometryError {
public:
    NotFullDimensional(int affine_rank, int ambient_dim);
    int affine_rank() const { return affine_rank_; }
    int ambient_dim() const { return ambient_dim_; }

private:
    int affine_rank_;
    int ambient_dim_;
};

class LimitExceeded : public GeometryError {
public:
    using GeometryError::GeometryError;
};

class OverflowError : public GeometryError {
public:
    using GeometryError::GeometryError;
};

class InteriorPointError : public GeometryError {
public:
    InteriorPointError(std::size_t count);
    /// Number of strictly interior lattice points found (0 or >= 2).
    std::size_t count() const { return count_; }

private:
    std::size_t count_;
};

class VPolytope {
public:
    /// Throws std::invalid_argument on empty input, ragged coordinates or duplicates.
    VPolytope(std::size_t ambient_dim, std::vector<LatticePoint> vertices);
    explicit VPolytope(const std::vector<LatticePoint>& vertices);

    std::size_t ambient_dim() const { return ambient_dim_; }
    const std::vector<LatticePoint>& vertices() const { return vertices_; }

    friend bool operator==(const VPolytope&, const VPolytope&) = default;

private:
    std::size_t ambient_dim_;
    std::vector<LatticePoint> vertices_;
};

/// normal . x <= rhs, normal primitive.
struct Facet {
    std::vector<std::int64_t> normal;
    std::int64_t rhs;
    friend bool operator==(const Facet&, const Facet&) = default;
    friend auto operator<=>(const Facet&, const Facet&) = default;
};

struct HRep {
    std::size_t ambient_dim = 0;
    std::vector<Facet> rows;  // sorted, no duplicates
};

struct GeometryLimits {
    std::size_t max_vertices = 64;
    std::size_t max_dim = 8;
};

enum class CountMode { closed, interior };

/// Rank of the affine hull of the points (-1 for an empty set).
int affine_rank(const std::vector<LatticePoint>& points);

/// Exact facet system of a full-dimensional polytope via the double description method.
HRep facet_enumeration(const VPolytope& p, const GeometryLimits& limits = {});

bool contains(const HRep& h, const LatticePoint& pt, bool strict);

/// Calls visit(point) for every lattice point of dilation*P (closed) or of its interior.
void enumerate_lattice_points(const HRep& h, const std::vector<std::int64_t>& box_lo,
                              const std::vector<std::int64_t>& box_hi, std::int64_t dilation,
                              CountMode mode, const std::function<void(const LatticePoint&)>& visit);

/// Exact |dilation*P cap Z^N| (closed) or |dilation*int(P) cap Z^N| (interior).
/// jobs > 1 splits the outermost coordinate range across threads.
std::uint64_t count_lattice_points(const VPolytope& p, std::int64_t dilation, CountMode mode,
                                   unsigned jobs = 1, const GeometryLimits& limits = {});

/// Same, against a precomputed facet system of p.
std::uint64_t count_lattice_points(const VPolytope& p, const HRep& h, std::int64_t dilation,
                                   CountMode mode, unsigned jobs = 1);

std::vector<LatticePoint> interior_lattice_points(const VPolytope& p, const GeometryLimits& limits = {});

/// Throws InteriorPointError unless exactly one strictly interior lattice point exists.
LatticePoint find_unique_interior_point(const VPolytope& p, const GeometryLimits& limits = {});

/// v -> factor * v - shift, vertex order preserved.
VPolytope dilate_translate(const VPolytope& p, std::int64_t factor, const LatticePoint& shift);

/// True iff the origin is the only interior lattice point.
bool is_fano(const VPolytope& p, const GeometryLimits& limits = {});

/// Whitespace-separated integers, one vertex per line; blank and '#' lines ignored.
/// Throws std::invalid_argument with the offending line number.
VPolytope parse_vertex_file(std::istream& in);

std::string format_point(const LatticePoint& pt);

}  // namespace ehrhart
