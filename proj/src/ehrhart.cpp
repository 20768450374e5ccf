#include "ehrhart/ehrhart.hpp"

#include <algorithm>

namespace ehrhart {

namespace {

Integer binomial(long n, long k) {
    if (k < 0 || n < k) return 0;
    Integer r;
    mpz_bin_ui(r.get_mpz_t(), Integer(n).get_mpz_t(), static_cast<unsigned long>(k));
    return r;
}

}  // namespace

DeltaVector::DeltaVector(std::initializer_list<long> entries) {
    for (long e : entries) entries_.emplace_back(e);
}

Integer DeltaVector::sum() const {
    Integer s = 0;
    for (const auto& e : entries_) s += e;
    return s;
}

DeltaVector DeltaVector::trimmed() const {
    auto v = entries_;
    while (v.size() > 1 && v.back() == 0) v.pop_back();
    return DeltaVector(std::move(v));
}

DeltaVector DeltaVector::padded(std::size_t length) const {
    auto v = entries_;
    if (v.size() < length) v.resize(length, Integer(0));
    return DeltaVector(std::move(v));
}

std::string DeltaVector::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) s += ",";
        s += entries_[i].get_str();
    }
    return s + ")";
}

Polynomial ehrhart_by_interpolation(const VPolytope& p, const EhrhartOptions& options) {
    const int d = static_cast<int>(p.ambient_dim());
    HRep h = facet_enumeration(p, options.limits);
    std::vector<std::pair<std::int64_t, Rational>> pts;
    pts.emplace_back(0, Rational(1));
    for (int n = 1; n <= d; ++n) {
        auto c = count_lattice_points(p, h, n, CountMode::closed, options.jobs);
        pts.emplace_back(n, Rational(mpz_class(std::to_string(c))));
    }
    Polynomial i_poly = lagrange_interpolate(pts);
    if (i_poly.degree() != d || i_poly.leading() <= 0)
        throw EhrhartError("degenerate counts: interpolated degree " + std::to_string(i_poly.degree()) +
                           " for a polytope of dimension " + std::to_string(d));
    return i_poly;
}

DeltaVector delta_from_ehrhart(const Polynomial& i_poly, int d) {
    if (d < 0) throw std::invalid_argument("delta_from_ehrhart: negative dimension");
    if (i_poly.degree() != d)
        throw EhrhartError("delta_from_ehrhart: degree " + std::to_string(i_poly.degree()) + " != d = " +
                           std::to_string(d));
    std::vector<Integer> values;
    for (int m = 0; m <= d; ++m) {
        Rational v = i_poly(Rational(m));
        if (v.get_den() != 1)
            throw EhrhartError("delta_from_ehrhart: non-integral value " + format_rational(v) + " at n = " +
                               std::to_string(m));
        values.push_back(v.get_num());
    }
    if (values[0] != 1) throw EhrhartError("delta_from_ehrhart: i(0) = " + values[0].get_str() + ", expected 1");
    std::vector<Integer> delta(static_cast<std::size_t>(d) + 1);
    for (int i = 0; i <= d; ++i) {
        Integer acc = 0;
        for (int j = 0; j <= i; ++j) {
            Integer term = binomial(d + 1, j) * values[static_cast<std::size_t>(i - j)];
            if (j % 2) acc -= term;
            else acc += term;
        }
        if (acc < 0)
            throw EhrhartError("nonnegativity violated: delta_" + std::to_string(i) + " = " + acc.get_str());
        delta[static_cast<std::size_t>(i)] = acc;
    }
    return DeltaVector(std::move(delta));
}

Polynomial ehrhart_from_delta(const DeltaVector& delta) {
    if (delta.size() == 0) throw std::invalid_argument("ehrhart_from_delta: empty delta vector");
    const int d = delta.dimension();
    Polynomial acc;
    for (int i = 0; i <= d; ++i) acc += binomial_poly(d - i, d) * Rational(delta[static_cast<std::size_t>(i)]);
    return acc;
}

ReciprocityResult check_reciprocity(const VPolytope& p, const Polynomial& i_poly, int n_max,
                                    const EhrhartOptions& options) {
    const int d = static_cast<int>(p.ambient_dim());
    HRep h = facet_enumeration(p, options.limits);
    for (int n = 1; n <= n_max; ++n) {
        Rational predicted = i_poly(Rational(-n));
        if (d % 2) predicted = -predicted;
        auto interior = count_lattice_points(p, h, n, CountMode::interior, options.jobs);
        if (predicted != Rational(mpz_class(std::to_string(interior)))) return {false, n};
    }
    return {};
}

bool is_gorenstein(const DeltaVector& delta) {
    const auto& e = delta.entries();
    return std::equal(e.begin(), e.end(), e.rbegin());
}

bool check_functional_equation(const Polynomial& i_poly, int d) {
    Polynomial reflected = i_poly.compose_affine(-1, -1);
    if (d % 2) reflected = -reflected;
    return reflected == i_poly;
}

std::vector<DeltaViolation> validate_delta(const DeltaVector& delta) {
    std::vector<DeltaViolation> out;
    const auto& e = delta.entries();
    if (e.empty() || e[0] != 1)
        out.push_back({DeltaViolation::Kind::leading_not_one, 0, "delta_0 != 1"});
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] < 0)
            out.push_back({DeltaViolation::Kind::negative, i,
                           "nonnegativity at index " + std::to_string(i) + ": " + e[i].get_str()});
    const std::size_t d = e.empty() ? 0 : e.size() - 1;
    if (d >= 2 && e[d] != 0)
        for (std::size_t i = 1; i < d; ++i)
            if (e[i] < e[1])
                out.push_back({DeltaViolation::Kind::lower_bound, i,
                               "lower-bound at index " + std::to_string(i) + ": delta_" + std::to_string(i) +
                                   " = " + e[i].get_str() + " < delta_1 = " + e[1].get_str()});
    return out;
}

}  // namespace ehrhart
