#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ehrhart {

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

class ArithmeticError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses "p" or "p/q" (optional sign, decimal digits). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string format_rational(const Rational& r);

double to_double(const Rational& r);

/// num/den in lowest terms; den must be nonzero.
Rational make_rational(long num, long den);

/// Dense univariate polynomial over Q. Coefficients are stored constant-first and
/// the highest stored coefficient is never zero (the zero polynomial stores nothing).
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coefficients);
    Polynomial(std::initializer_list<Rational> coefficients);

    static Polynomial constant(const Rational& c);
    /// c0 + c1 * n
    static Polynomial linear(const Rational& c0, const Rational& c1);
    static Polynomial monomial(const Rational& c, int power);

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Rational>& coefficients() const { return coeffs_; }
    /// Coefficient of n^power, zero beyond the degree.
    Rational coeff(int power) const;
    const Rational& leading() const;

    Rational operator()(const Rational& x) const;
    double evaluate(double x) const;

    Polynomial derivative() const;
    /// p(scale * n + shift)
    Polynomial compose_affine(const Rational& scale, const Rational& shift) const;
    /// Divides by the leading coefficient.
    Polynomial monic() const;
    /// Positive rational multiple with coprime integer coefficients.
    Polynomial primitive() const;

    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);
    Polynomial& operator*=(const Polynomial& other);
    Polynomial& operator*=(const Rational& scalar);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
    friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
    friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
    Polynomial operator-() const;

    friend bool operator==(const Polynomial& a, const Polynomial& b);

    /// Human-readable, highest power first, e.g. "4n^3 + 6n^2 + 4n + 1".
    std::string to_string(char variable = 'n') const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

struct DivMod {
    Polynomial quotient;
    Polynomial remainder;
};

DivMod divmod(const Polynomial& p, const Polynomial& q);

/// Monic gcd; gcd(0, 0) is the zero polynomial.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// (n+shift)(n+shift-1)...(n+shift-bottom+1)/bottom!, the binomial C(n+shift, bottom)
/// as a polynomial in n.
Polynomial binomial_poly(std::int64_t shift, int bottom);

/// Unique polynomial of degree < points.size() through the given nodes.
Polynomial lagrange_interpolate(const std::vector<std::pair<std::int64_t, Rational>>& points);

/// Returns p / q, throwing ArithmeticError when the remainder is nonzero.
Polynomial exact_divide(const Polynomial& p, const Polynomial& q);

/// Number of distinct real roots of p in the half-open interval (lo, hi].
/// An empty bound stands for -inf (lo) or +inf (hi).
std::size_t sturm_count_roots(const Polynomial& p, const std::optional<Rational>& lo,
                              const std::optional<Rational>& hi);

/// p / gcd(p, p')
Polynomial square_free_part(const Polynomial& p);

/// Comma-separated coefficients, constant first: "1,4,6,4" or "1,1/2".
Polynomial parse_polynomial(std::string_view text);
std::string format_coefficients(const Polynomial& p);

}  // namespace ehrhart
