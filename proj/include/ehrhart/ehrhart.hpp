#pragma once

#include "ehrhart/exact_arith.hpp"
#include "ehrhart/polytope.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ehrhart {

/// (delta_0, ..., delta_d): numerator of the Ehrhart series over (1 - t)^(d+1).
class DeltaVector {
public:
    DeltaVector() = default;
    explicit DeltaVector(std::vector<Integer> entries) : entries_(std::move(entries)) {}
    DeltaVector(std::initializer_list<long> entries);

    const std::vector<Integer>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    /// d, the dimension the vector was computed for.
    int dimension() const { return static_cast<int>(entries_.size()) - 1; }
    const Integer& operator[](std::size_t i) const { return entries_[i]; }
    Integer sum() const;
    /// Drops trailing zeros (never below length 1).
    DeltaVector trimmed() const;
    /// Pads with zeros to the given length.
    DeltaVector padded(std::size_t length) const;

    friend bool operator==(const DeltaVector&, const DeltaVector&) = default;

    std::string to_string() const;

private:
    std::vector<Integer> entries_;
};

class EhrhartError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EhrhartOptions {
    unsigned jobs = 1;
    GeometryLimits limits{};
};

/// Interpolates i(P, n) through n = 0..d from exact lattice counts.
Polynomial ehrhart_by_interpolation(const VPolytope& p, const EhrhartOptions& options = {});

/// delta_i = sum_{j<=i} (-1)^j C(d+1, j) i(i - j).
DeltaVector delta_from_ehrhart(const Polynomial& i_poly, int d);

/// i(P, n) = sum_i delta_i C(n + d - i, d).
Polynomial ehrhart_from_delta(const DeltaVector& delta);

struct ReciprocityResult {
    bool ok = true;
    std::optional<int> first_failure;  // dilation at which the identity broke
    explicit operator bool() const { return ok; }
};

/// Compares (-1)^d i(-n) with brute-force interior counts for 1 <= n <= n_max.
ReciprocityResult check_reciprocity(const VPolytope& p, const Polynomial& i_poly, int n_max,
                                    const EhrhartOptions& options = {});

bool is_gorenstein(const DeltaVector& delta);

/// i(n) == (-1)^d i(-n-1) as a polynomial identity.
bool check_functional_equation(const Polynomial& i_poly, int d);

struct DeltaViolation {
    enum class Kind { leading_not_one, negative, lower_bound };
    Kind kind;
    std::size_t index;
    std::string message;
};

/// Empty iff delta_0 = 1, all entries nonnegative, and delta_d != 0 implies delta_1 <= delta_i
/// for 1 <= i < d.
std::vector<DeltaViolation> validate_delta(const DeltaVector& delta);

}  // namespace ehrhart
