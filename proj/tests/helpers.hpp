#pragma once

#include "ehrhart/ehrhart.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <complex>
#include <vector>

namespace testing {

inline ehrhart::Polynomial poly(const char* text) { return ehrhart::parse_polynomial(text); }

inline ehrhart::Rational q(long num, long den = 1) { return ehrhart::make_rational(num, den); }

inline std::vector<oracle::Point> points(const ehrhart::VPolytope& p) { return p.vertices(); }

/// Every expected root has a distinct computed root within tol.
inline bool same_roots(const std::vector<std::complex<double>>& got, const std::vector<std::complex<double>>& want,
                       double tol) {
    if (got.size() != want.size()) return false;
    std::vector<bool> used(got.size(), false);
    for (auto w : want) {
        std::size_t best = got.size();
        double dist = tol;
        for (std::size_t i = 0; i < got.size(); ++i)
            if (!used[i] && std::abs(got[i] - w) <= dist) best = i, dist = std::abs(got[i] - w);
        if (best == got.size()) return false;
        used[best] = true;
    }
    return true;
}

inline std::vector<double> to_doubles(const ehrhart::Polynomial& p) {
    std::vector<double> out;
    for (const auto& c : p.coefficients()) out.push_back(c.get_d());
    return out;
}

}  // namespace testing
