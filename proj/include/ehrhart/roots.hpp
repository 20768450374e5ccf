#pragma once

#include "ehrhart/exact_arith.hpp"
#include "ehrhart/family.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ehrhart {

using ComplexRoot = std::complex<double>;

inline constexpr std::uint64_t kDefaultSeed = 20090305;

/// Every numeric threshold used by root finding and classification.
struct RootTolerances {
    double step = 1e-13;       // simultaneous iteration stops once every correction is below this
    double residual = 1e-9;    // |p(z)| <= residual * (1 + |lead| |z|^deg) on returned roots
    double classify = 1e-7;    // |im| for real, |re + 1/2| for the critical line, band slack
    double distinct = 1e-6;    // minimum pairwise distance for distinct roots
    double bisection = 1e-12;  // final bracket width on the critical line
    int max_iterations = 500;
};

class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, std::vector<double> residuals)
        : std::runtime_error(what), residuals_(std::move(residuals)) {}
    const std::vector<double>& residuals() const { return residuals_; }

private:
    std::vector<double> residuals_;
};

/// All deg(p) complex roots by Aberth iteration on the monic double image, followed by one
/// correction step whose residual is evaluated exactly. Sorted by (re, im).
std::vector<ComplexRoot> find_roots_numeric(const Polynomial& p, const RootTolerances& tol = {},
                                            std::uint64_t seed = kDefaultSeed);

/// Positive rationals gamma_0..gamma_2k (odd count).
class Gammas {
public:
    explicit Gammas(std::vector<Rational> values);
    const std::vector<Rational>& values() const { return values_; }
    int k() const { return static_cast<int>(values_.size() / 2); }

private:
    std::vector<Rational> values_;
};

struct CriticalLineRoot {
    double b;                  // the root is -1/2 + b i
    double target;             // pi/2 + m pi
    double bracket_lo, bracket_hi;
    double h_lo, h_hi;         // h at the initial bracket ends
};

/// h(b) = sum_i atan(b / gamma_i) is strictly increasing; solves h(b) = pi/2 + m pi for
/// m = -k..k-1 by bisection. Sorted ascending by b.
std::vector<CriticalLineRoot> critical_line_roots_bisection(const Gammas& g, double tol = 1e-12);

/// f(x) = prod (x - alpha_i) - prod (x - beta_i), beta_i = gamma_i - 1/2, alpha_i = -1 - beta_i.
Polynomial lemma2_polynomial(const Gammas& g);

struct Certificate {
    enum class Stage { passed, division, odd_coefficients, sturm_count, nonzero_constant, square_free };
    bool pass = false;
    Stage stage = Stage::passed;  // the failing stage when !pass
    std::string reason;
    Polynomial quotient;          // p with the known real factors removed
    Polynomial even_part;         // H with quotient(y - 1/2) = H(y^2), when reached
    std::optional<std::size_t> negative_roots;  // distinct roots of H in (-inf, 0]

    /// True when every remaining root lies on Re = -1/2, whether or not they are distinct.
    bool on_critical_line() const {
        return pass || stage == Stage::nonzero_constant || stage == Stage::square_free;
    }
};

const char* stage_name(Certificate::Stage s);

/// Exact proof that every root of p outside known_real_roots is imaginary with real part -1/2
/// and that all roots are distinct.
Certificate verify_critical_line_exact(const Polynomial& p, const std::vector<Rational>& known_real_roots);

struct RootReport {
    int d = 0;
    std::vector<ComplexRoot> roots;
    std::size_t n_real = 0;
    std::size_t n_imaginary = 0;
    bool all_imag_on_critical_line = true;
    bool real_roots_in_open_unit_interval = true;
    bool distinct = true;
    bool conjecture_band_ok = true;
    bool conjugate_pairs = true;
    /// Largest |re + 1/2| over all roots.
    double max_critical_line_deviation = 0.0;
};

RootReport classify_roots(const std::vector<ComplexRoot>& roots, int d, const RootTolerances& tol = {});

struct TheoremCheck {
    FamilyParams params;
    Polynomial i_poly;
    RootReport report;
    std::vector<Rational> expected_real;
    bool real_roots_match = false;
    std::optional<Certificate> certificate;  // skipped when d exceeds the exact limit
    // items (i)..(v)
    bool distinct_roots = false;
    bool imaginary_count = false;
    bool real_count = false;
    bool imaginary_on_line = false;
    bool real_in_interval = false;

    bool all_pass() const;
};

struct TheoremLimits {
    int max_d_numeric = 30;
    int max_d_exact = 20;
};

TheoremCheck theorem_property_check(const FamilyParams& params, const RootTolerances& tol = {},
                                    std::uint64_t seed = kDefaultSeed, const TheoremLimits& limits = {});

}  // namespace ehrhart
