#include "ehrhart/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace ehrhart {

namespace {

struct ExactComplex {
    Rational re = 0;
    Rational im = 0;
};

/// p(z) and p'(z) evaluated exactly at the binary rational z, then rounded.
std::pair<ComplexRoot, ComplexRoot> exact_eval(const Polynomial& p, ComplexRoot z) {
    Rational zr(z.real()), zi(z.imag());
    ExactComplex v, dv;
    const auto& c = p.coefficients();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        // dv = dv*z + v ; v = v*z + c
        Rational dr = dv.re * zr - dv.im * zi + v.re;
        Rational di = dv.re * zi + dv.im * zr + v.im;
        dv = {dr, di};
        Rational vr = v.re * zr - v.im * zi + *it;
        Rational vi = v.re * zi + v.im * zr;
        v = {vr, vi};
    }
    return {{v.re.get_d(), v.im.get_d()}, {dv.re.get_d(), dv.im.get_d()}};
}

struct HornerResult {
    ComplexRoot value;
    ComplexRoot derivative;
    double error_bound;  // sum |c_k| |z|^k
};

HornerResult horner(const std::vector<double>& c, ComplexRoot z) {
    ComplexRoot v = 0.0, dv = 0.0;
    double bound = 0.0;
    const double az = std::abs(z);
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        dv = dv * z + v;
        v = v * z + *it;
        bound = bound * az + std::abs(*it);
    }
    return {v, dv, bound};
}

double residual_scale(const Polynomial& p, ComplexRoot z) {
    return 1.0 + std::abs(p.leading().get_d()) * std::pow(std::abs(z), p.degree());
}

}  // namespace

std::vector<ComplexRoot> find_roots_numeric(const Polynomial& p, const RootTolerances& tol, std::uint64_t seed) {
    const int n = p.degree();
    if (n < 0) throw std::invalid_argument("find_roots_numeric: zero polynomial");
    if (n == 0) return {};

    std::vector<double> mono(static_cast<std::size_t>(n) + 1);
    const Rational lead = p.leading();
    for (int i = 0; i <= n; ++i) mono[static_cast<std::size_t>(i)] = Rational(p.coeff(i) / lead).get_d();

    double radius = 1.0;
    for (int i = 0; i < n; ++i) radius = std::max(radius, 1.0 + std::abs(mono[static_cast<std::size_t>(i)]));

    std::mt19937_64 rng(seed);
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const double frac = std::fmod(std::numbers::sqrt2 + u, 1.0);
    const double step_angle = 2.0 * std::numbers::pi / n;
    std::vector<ComplexRoot> z(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) z[static_cast<std::size_t>(j)] = std::polar(radius, step_angle * (j + frac));

    constexpr double eps = std::numeric_limits<double>::epsilon();
    std::vector<bool> converged(z.size(), false);
    bool done = false;
    for (int iter = 0; iter < tol.max_iterations && !done; ++iter) {
        done = true;
        for (std::size_t i = 0; i < z.size(); ++i) {
            auto h = horner(mono, z[i]);
            if (std::abs(h.value) <= 4.0 * eps * (n + 1) * h.error_bound) {
                converged[i] = true;
                continue;
            }
            ComplexRoot newton = h.value / h.derivative;
            ComplexRoot repulsion = 0.0;
            for (std::size_t j = 0; j < z.size(); ++j)
                if (j != i) repulsion += 1.0 / (z[i] - z[j]);
            ComplexRoot w = newton / (1.0 - newton * repulsion);
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
                // stationary point; nudge off it
                z[i] += ComplexRoot(1e-3, 1e-3) * (1.0 + std::abs(z[i]));
                converged[i] = false;
                done = false;
                continue;
            }
            z[i] -= w;
            converged[i] = std::abs(w) <= tol.step * std::max(1.0, std::abs(z[i]));
            if (!converged[i]) done = false;
        }
    }
    if (!done) {
        std::vector<double> res;
        for (auto zi : z) res.push_back(std::abs(horner(mono, zi).value));
        throw SolverError("find_roots_numeric: no convergence after " + std::to_string(tol.max_iterations) +
                              " iterations",
                          std::move(res));
    }

    // One correction with an exactly evaluated residual.
    std::vector<ComplexRoot> polished = z;
    for (std::size_t i = 0; i < z.size(); ++i) {
        auto [v, dv] = exact_eval(p, z[i]);
        if (v == 0.0) continue;
        ComplexRoot newton = v / dv;
        ComplexRoot repulsion = 0.0;
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < z.size(); ++j) {
            if (j == i) continue;
            repulsion += 1.0 / (z[i] - z[j]);
            nearest = std::min(nearest, std::abs(z[i] - z[j]));
        }
        ComplexRoot w = newton / (1.0 - newton * repulsion);
        if (std::isfinite(w.real()) && std::isfinite(w.imag()) && std::abs(w) < 0.25 * nearest)
            polished[i] = z[i] - w;
    }

    std::vector<double> residuals;
    bool ok = true;
    for (auto zi : polished) {
        double r = std::abs(exact_eval(p, zi).first);
        residuals.push_back(r);
        if (!(r <= tol.residual * residual_scale(p, zi))) ok = false;
    }
    if (!ok) throw SolverError("find_roots_numeric: residual above tolerance", std::move(residuals));

    std::sort(polished.begin(), polished.end(), [](ComplexRoot a, ComplexRoot b) {
        double ka = std::round(a.real() * 1e9), kb = std::round(b.real() * 1e9);
        if (ka != kb) return ka < kb;
        return a.imag() < b.imag();
    });
    return polished;
}

Gammas::Gammas(std::vector<Rational> values) : values_(std::move(values)) {
    if (values_.size() % 2 == 0) throw std::invalid_argument("Gammas: need an odd number of values");
    for (const auto& v : values_)
        if (v <= 0) throw std::invalid_argument("Gammas: values must be positive, got " + format_rational(v));
}

std::vector<CriticalLineRoot> critical_line_roots_bisection(const Gammas& g, double tol) {
    std::vector<double> gam;
    for (const auto& v : g.values()) gam.push_back(v.get_d());
    auto h = [&](double b) {
        double s = 0.0;
        for (double c : gam) s += std::atan(b / c);
        return s;
    };
    const double pi = std::numbers::pi;
    const int k = g.k();
    std::vector<CriticalLineRoot> out;
    // m = j and m = -j-1 give opposite targets +-(pi/2 + j pi).
    for (int m = -k; m <= k - 1; ++m) {
        const int j = m >= 0 ? m : -m - 1;
        const double target = (m >= 0 ? 1.0 : -1.0) * (pi / 2 + j * pi);
        double lo, hi;
        if (target > 0) {
            lo = 0.0;
            hi = 1.0;
            for (int it = 0; h(hi) < target; ++it) {
                if (it > 2000) throw std::runtime_error("critical_line_roots_bisection: bracket failure");
                hi *= 2.0;
            }
        } else {
            hi = 0.0;
            lo = -1.0;
            for (int it = 0; h(lo) > target; ++it) {
                if (it > 2000) throw std::runtime_error("critical_line_roots_bisection: bracket failure");
                lo *= 2.0;
            }
        }
        CriticalLineRoot r{0.0, target, lo, hi, h(lo), h(hi)};
        if (!(r.h_lo <= target && target <= r.h_hi))
            throw std::runtime_error("critical_line_roots_bisection: bracket does not straddle target");
        while (hi - lo > tol) {
            double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            if (h(mid) < target)
                lo = mid;
            else
                hi = mid;
        }
        r.b = 0.5 * (lo + hi);
        out.push_back(r);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.b < b.b; });
    return out;
}

Polynomial lemma2_polynomial(const Gammas& g) {
    Polynomial lower_roots = Polynomial::constant(1);  // prod (x - alpha_i)
    Polynomial upper_roots = Polynomial::constant(1);  // prod (x - beta_i)
    const Rational half = make_rational(1, 2);
    for (const auto& gamma : g.values()) {
        Rational beta = gamma - half;
        Rational alpha = -1 - beta;
        lower_roots *= Polynomial::linear(-alpha, 1);
        upper_roots *= Polynomial::linear(-beta, 1);
    }
    Polynomial f = lower_roots - upper_roots;
    if (f.degree() != 2 * g.k())
        throw ArithmeticError("lemma2_polynomial: degree " + std::to_string(f.degree()) + ", expected " +
                              std::to_string(2 * g.k()));
    return f;
}

const char* stage_name(Certificate::Stage s) {
    switch (s) {
        case Certificate::Stage::passed: return "passed";
        case Certificate::Stage::division: return "division";
        case Certificate::Stage::odd_coefficients: return "odd_coefficients";
        case Certificate::Stage::sturm_count: return "sturm_count";
        case Certificate::Stage::nonzero_constant: return "nonzero_constant";
        case Certificate::Stage::square_free: return "square_free";
    }
    return "unknown";
}

Certificate verify_critical_line_exact(const Polynomial& p, const std::vector<Rational>& known_real_roots) {
    Certificate cert;
    auto fail = [&](Certificate::Stage stage, std::string reason) {
        cert.pass = false;
        cert.stage = stage;
        cert.reason = std::move(reason);
        return cert;
    };
    if (p.is_zero()) return fail(Certificate::Stage::division, "zero polynomial");

    auto sorted = known_real_roots;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        return fail(Certificate::Stage::division, "known real roots are not distinct");

    Polynomial q = p;
    for (const auto& r : known_real_roots) {
        try {
            q = exact_divide(q, Polynomial::linear(-r, 1));
        } catch (const ArithmeticError&) {
            return fail(Certificate::Stage::division, "n = " + format_rational(r) + " is not a root");
        }
    }
    cert.quotient = q;

    Polynomial shifted = q.compose_affine(1, make_rational(-1, 2));
    std::vector<Rational> even;
    for (int j = 0; j <= shifted.degree(); ++j) {
        Rational c = shifted.coeff(j);
        if (j % 2 == 1) {
            if (c != 0)
                return fail(Certificate::Stage::odd_coefficients,
                            "coefficient of y^" + std::to_string(j) + " is " + format_rational(c));
        } else {
            even.push_back(c);
        }
    }
    Polynomial H(std::move(even));
    cert.even_part = H;

    if (H.degree() >= 1) {
        // Every root of H real and <= 0  <=>  all distinct roots of H counted in (-inf, 0].
        std::size_t neg = sturm_count_roots(H, std::nullopt, Rational(0));
        cert.negative_roots = neg;
        const int distinct = square_free_part(H).degree();
        if (neg != static_cast<std::size_t>(distinct))
            return fail(Certificate::Stage::sturm_count,
                        "H has " + std::to_string(neg) + " distinct roots in (-inf, 0] out of " +
                            std::to_string(distinct));
        if (H(Rational(0)) == 0) return fail(Certificate::Stage::nonzero_constant, "H(0) = 0: -1/2 is a root");
        if (gcd(H, H.derivative()).degree() > 0)
            return fail(Certificate::Stage::square_free, "H is not square-free");
    } else {
        cert.negative_roots = 0;
    }
    cert.pass = true;
    cert.stage = Certificate::Stage::passed;
    return cert;
}

RootReport classify_roots(const std::vector<ComplexRoot>& roots, int d, const RootTolerances& tol) {
    RootReport rep;
    rep.d = d;
    rep.roots = roots;
    for (const auto& z : roots) {
        const bool real = std::abs(z.imag()) <= tol.classify;
        const double dev = std::abs(z.real() + 0.5);
        rep.max_critical_line_deviation = std::max(rep.max_critical_line_deviation, dev);
        if (real) {
            ++rep.n_real;
            if (!(z.real() > -1.0 + tol.classify && z.real() < -tol.classify))
                rep.real_roots_in_open_unit_interval = false;
        } else {
            ++rep.n_imaginary;
            if (dev > tol.classify) rep.all_imag_on_critical_line = false;
            // conjugate partner
            bool paired = std::any_of(roots.begin(), roots.end(), [&](ComplexRoot w) {
                return std::abs(w - std::conj(z)) <= 1e-9 * std::max(1.0, std::abs(z));
            });
            if (!paired) rep.conjugate_pairs = false;
        }
        if (z.real() < -d - tol.classify || z.real() > d - 1 + tol.classify) rep.conjecture_band_ok = false;
    }
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            if (std::abs(roots[i] - roots[j]) <= tol.distinct) rep.distinct = false;
    return rep;
}

bool TheoremCheck::all_pass() const {
    return distinct_roots && imaginary_count && real_count && imaginary_on_line && real_in_interval &&
           real_roots_match && (!certificate || certificate->pass);
}

TheoremCheck theorem_property_check(const FamilyParams& params, const RootTolerances& tol, std::uint64_t seed,
                                    const TheoremLimits& limits) {
    if (params.d() > limits.max_d_numeric)
        throw std::invalid_argument("theorem_property_check: d = " + std::to_string(params.d()) +
                                    " exceeds numeric limit " + std::to_string(limits.max_d_numeric));
    TheoremCheck tc{params, closed_form_P(params), {}, expected_real_roots(params), false, std::nullopt};
    auto roots = find_roots_numeric(tc.i_poly, tol, seed);
    tc.report = classify_roots(roots, params.d(), tol);

    const std::size_t two_k = static_cast<std::size_t>(2 * params.k());
    const std::size_t n_real = static_cast<std::size_t>(params.d()) - two_k;

    std::vector<double> real_numeric;
    for (auto z : roots)
        if (std::abs(z.imag()) <= tol.classify) real_numeric.push_back(z.real());
    std::sort(real_numeric.begin(), real_numeric.end());
    std::vector<double> real_expected;
    for (const auto& r : tc.expected_real) real_expected.push_back(r.get_d());
    std::sort(real_expected.begin(), real_expected.end());
    tc.real_roots_match = real_numeric.size() == real_expected.size();
    for (std::size_t i = 0; tc.real_roots_match && i < real_numeric.size(); ++i)
        if (std::abs(real_numeric[i] - real_expected[i]) > tol.classify) tc.real_roots_match = false;

    if (params.d() <= limits.max_d_exact) tc.certificate = verify_critical_line_exact(tc.i_poly, tc.expected_real);

    const bool cert_ok = !tc.certificate || tc.certificate->pass;
    tc.distinct_roots = roots.size() == static_cast<std::size_t>(params.d()) && tc.report.distinct && cert_ok;
    tc.imaginary_count = tc.report.n_imaginary == two_k;
    tc.real_count = tc.report.n_real == n_real && tc.real_roots_match;
    tc.imaginary_on_line = tc.report.all_imag_on_critical_line && cert_ok;
    tc.real_in_interval = tc.report.real_roots_in_open_unit_interval;
    return tc;
}

}  // namespace ehrhart
