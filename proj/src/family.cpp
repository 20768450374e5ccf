#include "ehrhart/family.hpp"

#include <stdexcept>
#include <string>

namespace ehrhart {

FamilyParams::FamilyParams(int k, int d) : k_(k), d_(d) {
    if (d < 1 || k < 0 || 2 * k > d)
        throw std::invalid_argument("invalid family parameters (k=" + std::to_string(k) + ", d=" +
                                    std::to_string(d) + "): need d >= 1 and 0 <= 2k <= d");
}

VPolytope build_Q(const FamilyParams& params) {
    const auto d = static_cast<std::size_t>(params.d());
    const auto two_k = static_cast<std::size_t>(2 * params.k());
    if (two_k == 0) return VPolytope(d, {LatticePoint(d, 0)});
    std::vector<LatticePoint> verts;
    LatticePoint apex(d, 0);
    for (std::size_t i = 0; i < two_k; ++i) {
        LatticePoint e(d, 0);
        e[i] = 1;
        verts.push_back(std::move(e));
        apex[i] = -1;
    }
    verts.push_back(std::move(apex));
    return VPolytope(d, std::move(verts));
}

VPolytope build_Q_reembedded(const FamilyParams& params) {
    if (params.k() == 0) throw std::invalid_argument("build_Q_reembedded: Q is a point when k = 0");
    const auto two_k = static_cast<std::size_t>(2 * params.k());
    std::vector<LatticePoint> verts;
    const VPolytope q = build_Q(params);
    for (const auto& v : q.vertices()) verts.emplace_back(v.begin(), v.begin() + two_k);
    return VPolytope(two_k, std::move(verts));
}

VPolytope build_Qc(const FamilyParams& params) {
    const auto d = static_cast<std::size_t>(params.d());
    std::vector<LatticePoint> verts = build_Q(params).vertices();
    for (auto i = static_cast<std::size_t>(2 * params.k()); i < d; ++i) {
        LatticePoint e(d, 0);
        e[i] = 1;
        verts.push_back(std::move(e));
    }
    return VPolytope(d, std::move(verts));
}

VPolytope build_P(const FamilyParams& params, const GeometryLimits& limits) {
    if (static_cast<std::size_t>(params.d()) > limits.max_dim)
        throw LimitExceeded("build_P: d = " + std::to_string(params.d()) + " exceeds interior-search limit " +
                            std::to_string(limits.max_dim));
    VPolytope scaled = dilate_translate(build_Qc(params), params.scale(), LatticePoint(params.d(), 0));
    LatticePoint a;
    try {
        a = find_unique_interior_point(scaled, limits);
    } catch (const InteriorPointError& e) {
        throw GeometryError(std::string("build_P: interior point search failed: ") + e.what());
    }
    return dilate_translate(scaled, 1, a);
}

Polynomial closed_form_Qc(const FamilyParams& params) {
    const int d = params.d();
    return binomial_poly(d + 1, d + 1) - binomial_poly(d - 2 * params.k(), d + 1);
}

Polynomial closed_form_P(const FamilyParams& params) {
    return closed_form_Qc(params).compose_affine(params.scale(), 0);
}

std::vector<Rational> expected_real_roots(const FamilyParams& params) {
    std::vector<Rational> roots;
    const int m = params.scale();
    for (int i = 1; i <= params.d() - 2 * params.k(); ++i) roots.push_back(make_rational(-i, m));
    return roots;
}

Polynomial F_polynomial(const FamilyParams& params) {
    const int d = params.d();
    const int m = params.scale();
    Polynomial upper = Polynomial::constant(1);
    Polynomial lower = Polynomial::constant(1);
    for (int i = 0; i <= 2 * params.k(); ++i) {
        upper *= Polynomial::linear(make_rational(d + 1 - i, m), 1);
        lower *= Polynomial::linear(make_rational(-i, m), 1);
    }
    return upper - lower;
}

Rational factorization_constant(const FamilyParams& params) {
    Integer num, den;
    mpz_ui_pow_ui(num.get_mpz_t(), static_cast<unsigned long>(params.scale()),
                  static_cast<unsigned long>(params.d() + 1));
    mpz_fac_ui(den.get_mpz_t(), static_cast<unsigned long>(params.d() + 1));
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Polynomial real_root_factor(const FamilyParams& params) {
    Polynomial acc = Polynomial::constant(1);
    for (const auto& r : expected_real_roots(params)) acc *= Polynomial::linear(-r, 1);
    return acc;
}

std::vector<Rational> family_gammas(const FamilyParams& params) {
    std::vector<Rational> g;
    for (int i = 0; i <= 2 * params.k(); ++i) {
        g.push_back(make_rational(1, 2) + make_rational(i, params.scale()));
    }
    return g;
}

}  // namespace ehrhart
