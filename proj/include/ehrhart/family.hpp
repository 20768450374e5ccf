#pragma once

#include "ehrhart/exact_arith.hpp"
#include "ehrhart/polytope.hpp"

#include <vector>

namespace ehrhart {

/// Parameters (k, d) of the Gorenstein Fano family, 0 <= 2k <= d, d >= 1.
class FamilyParams {
public:
    /// Throws std::invalid_argument when the constraint fails.
    FamilyParams(int k, int d);

    int k() const { return k_; }
    int d() const { return d_; }
    /// d - 2k + 1, the dilation factor turning Q^c into P.
    int scale() const { return d_ - 2 * k_ + 1; }

    friend bool operator==(const FamilyParams&, const FamilyParams&) = default;

private:
    int k_;
    int d_;
};

/// conv(e_1, ..., e_2k, -(e_1 + ... + e_2k)) in R^d; the origin alone when k = 0.
VPolytope build_Q(const FamilyParams& params);

/// build_Q restricted to its first 2k coordinates (full-dimensional model, k >= 1).
VPolytope build_Q_reembedded(const FamilyParams& params);

/// conv(Q, e_{2k+1}, ..., e_d).
VPolytope build_Qc(const FamilyParams& params);

/// (d - 2k + 1) Q^c - a with a the unique interior lattice point, found by enumeration.
/// The interior search is bounded by limits.max_dim.
VPolytope build_P(const FamilyParams& params, const GeometryLimits& limits = {});

/// C(n + d + 1, d + 1) - C(n + d - 2k, d + 1)
Polynomial closed_form_Qc(const FamilyParams& params);

/// closed_form_Qc(n) composed with n -> (d - 2k + 1) n.
Polynomial closed_form_P(const FamilyParams& params);

/// -i/(d - 2k + 1) for i = 1..d-2k, strictly decreasing.
std::vector<Rational> expected_real_roots(const FamilyParams& params);

/// prod_i (n + (d + 1 - i)/(d - 2k + 1)) - prod_i (n - i/(d - 2k + 1)), i = 0..2k.
Polynomial F_polynomial(const FamilyParams& params);

/// (d - 2k + 1)^(d+1) / (d+1)!, the constant in front of the factored i(P, n).
Rational factorization_constant(const FamilyParams& params);

/// prod_{i=1}^{d-2k} (n + i/(d - 2k + 1))
Polynomial real_root_factor(const FamilyParams& params);

/// gamma_i = 1/2 + i/(d - 2k + 1) for i = 0..2k; the shifted upper roots of F.
std::vector<Rational> family_gammas(const FamilyParams& params);

}  // namespace ehrhart
