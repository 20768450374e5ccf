#include "ehrhart/exact_arith.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace ehrhart {

namespace {

bool is_integer_token(std::string_view s) {
    std::size_t i = 0;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

std::string_view trim_ws(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

Integer parse_integer(std::string_view s) {
    if (!is_integer_token(s)) throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
    if (s[0] == '+') s.remove_prefix(1);
    return Integer(std::string(s), 10);
}

int sign_at_neg_inf(const Polynomial& p) {
    int s = sgn(p.leading());
    return (p.degree() % 2 == 0) ? s : -s;
}

std::size_t sign_variations(const std::vector<int>& signs) {
    std::size_t v = 0;
    int last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    text = trim_ws(text);
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text));
    Integer num = parse_integer(trim_ws(text.substr(0, slash)));
    auto den_text = trim_ws(text.substr(slash + 1));
    if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+'))
        throw std::invalid_argument("sign not allowed in denominator: '" + std::string(text) + "'");
    Integer den = parse_integer(den_text);
    if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string format_rational(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

double to_double(const Rational& r) { return r.get_d(); }

Rational make_rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Polynomial::Polynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
    for (auto& c : coeffs_) c.canonicalize();
    trim();
}

Polynomial::Polynomial(std::initializer_list<Rational> coefficients)
    : Polynomial(std::vector<Rational>(coefficients)) {}

Polynomial Polynomial::constant(const Rational& c) { return Polynomial({c}); }

Polynomial Polynomial::linear(const Rational& c0, const Rational& c1) { return Polynomial({c0, c1}); }

Polynomial Polynomial::monomial(const Rational& c, int power) {
    if (power < 0) throw std::invalid_argument("negative power");
    std::vector<Rational> v(static_cast<std::size_t>(power) + 1);
    v.back() = c;
    return Polynomial(std::move(v));
}

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::coeff(int power) const {
    if (power < 0 || power > degree()) return 0;
    return coeffs_[static_cast<std::size_t>(power)];
}

const Rational& Polynomial::leading() const {
    if (coeffs_.empty()) throw ArithmeticError("leading coefficient of the zero polynomial");
    return coeffs_.back();
}

Rational Polynomial::operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double Polynomial::evaluate(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->get_d();
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Rational> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
    return Polynomial(std::move(d));
}

Polynomial Polynomial::compose_affine(const Rational& scale, const Rational& shift) const {
    // Horner in polynomial arithmetic.
    Polynomial inner = linear(shift, scale);
    Polynomial acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc *= inner;
        acc += constant(*it);
    }
    return acc;
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return {};
    Polynomial r = *this;
    Rational inv = 1 / leading();
    return r *= inv;
}

Polynomial Polynomial::primitive() const {
    if (is_zero()) return {};
    Integer den_lcm = 1;
    for (const auto& c : coeffs_) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    Integer num_gcd = 0;
    for (const auto& c : coeffs_) {
        Integer scaled = c.get_num() * (den_lcm / c.get_den());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
    }
    Rational scale(den_lcm, num_gcd);
    scale.canonicalize();
    Polynomial r = *this;
    return r *= scale;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
    if (is_zero() || other.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    std::vector<Rational> out(coeffs_.size() + other.coeffs_.size() - 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < other.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * other.coeffs_[j];
    }
    coeffs_ = std::move(out);
    trim();
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& scalar) {
    if (scalar == 0) {
        coeffs_.clear();
        return *this;
    }
    for (auto& c : coeffs_) c *= scalar;
    return *this;
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

std::string Polynomial::to_string(char variable) const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Rational& c = coeffs_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        Rational mag = abs(c);
        if (first) {
            if (c < 0) out << "-";
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        first = false;
        bool unit = (mag == 1);
        if (i == 0 || !unit) {
            if (mag.get_den() != 1 && i > 0)
                out << "(" << format_rational(mag) << ")";
            else
                out << format_rational(mag);
        }
        if (i >= 1) out << variable;
        if (i >= 2) out << "^" << i;
    }
    return out.str();
}

DivMod divmod(const Polynomial& p, const Polynomial& q) {
    if (q.is_zero()) throw ArithmeticError("division by the zero polynomial");
    if (p.degree() < q.degree()) return {Polynomial{}, p};
    std::vector<Rational> rem = p.coefficients();
    const auto& qc = q.coefficients();
    const int dq = q.degree();
    std::vector<Rational> quot(static_cast<std::size_t>(p.degree() - dq + 1));
    Rational lead_inv = 1 / q.leading();
    for (int i = p.degree(); i >= dq; --i) {
        Rational factor = rem[static_cast<std::size_t>(i)] * lead_inv;
        quot[static_cast<std::size_t>(i - dq)] = factor;
        if (factor == 0) continue;
        for (int j = 0; j <= dq; ++j)
            rem[static_cast<std::size_t>(i - dq + j)] -= factor * qc[static_cast<std::size_t>(j)];
    }
    rem.resize(static_cast<std::size_t>(dq));
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    Polynomial x = a.primitive();
    Polynomial y = b.primitive();
    while (!y.is_zero()) {
        Polynomial r = divmod(x, y).remainder.primitive();
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

Polynomial binomial_poly(std::int64_t shift, int bottom) {
    if (bottom < 0) throw std::invalid_argument("binomial_poly: bottom must be nonnegative");
    Polynomial acc = Polynomial::constant(1);
    Integer fact = 1;
    for (int j = 0; j < bottom; ++j) {
        acc *= Polynomial::linear(Rational(Integer(shift) - j), 1);
        fact *= j + 1;
    }
    return acc *= Rational(1, 1) / Rational(fact);
}

Polynomial lagrange_interpolate(const std::vector<std::pair<std::int64_t, Rational>>& points) {
    if (points.empty()) throw std::invalid_argument("lagrange_interpolate: no points");
    std::set<std::int64_t> seen;
    for (const auto& [x, _] : points)
        if (!seen.insert(x).second)
            throw std::invalid_argument("lagrange_interpolate: duplicate abscissa " + std::to_string(x));

    // Newton divided differences, then expand.
    const std::size_t m = points.size();
    std::vector<Rational> dd(m);
    for (std::size_t i = 0; i < m; ++i) dd[i] = points[i].second;
    for (std::size_t level = 1; level < m; ++level)
        for (std::size_t i = m - 1; i >= level; --i)
            dd[i] = (dd[i] - dd[i - 1]) /
                    Rational(Integer(points[i].first) - Integer(points[i - level].first));

    Polynomial acc = Polynomial::constant(dd[m - 1]);
    for (std::size_t i = m - 1; i-- > 0;) {
        acc *= Polynomial::linear(Rational(-Integer(points[i].first)), 1);
        acc += Polynomial::constant(dd[i]);
    }
    return acc;
}

Polynomial exact_divide(const Polynomial& p, const Polynomial& q) {
    auto [quot, rem] = divmod(p, q);
    if (!rem.is_zero())
        throw ArithmeticError("exact_divide: nonzero remainder " + rem.to_string() + " dividing " +
                              p.to_string() + " by " + q.to_string());
    return quot;
}

Polynomial square_free_part(const Polynomial& p) {
    if (p.is_zero()) throw ArithmeticError("square-free part of the zero polynomial");
    if (p.degree() == 0) return p;
    return exact_divide(p, gcd(p, p.derivative()));
}

std::size_t sturm_count_roots(const Polynomial& p, const std::optional<Rational>& lo,
                              const std::optional<Rational>& hi) {
    if (p.is_zero()) throw ArithmeticError("sturm_count_roots: zero polynomial");
    if (lo && hi && !(*lo < *hi)) throw std::invalid_argument("sturm_count_roots: need lo < hi");

    std::vector<Polynomial> chain;
    chain.push_back(square_free_part(p).primitive());
    if (chain[0].degree() == 0) return 0;
    chain.push_back(chain[0].derivative().primitive());
    while (chain.back().degree() > 0) {
        Polynomial r = divmod(chain[chain.size() - 2], chain.back()).remainder;
        if (r.is_zero()) break;
        // primitive() only rescales by a positive factor, preserving signs.
        chain.push_back((-r).primitive());
    }

    auto signs_at = [&](const std::optional<Rational>& x, bool upper) {
        std::vector<int> s;
        s.reserve(chain.size());
        for (const auto& q : chain) {
            if (x)
                s.push_back(sgn(q(*x)));
            else
                s.push_back(upper ? sgn(q.leading()) : sign_at_neg_inf(q));
        }
        return s;
    };
    std::size_t v_lo = sign_variations(signs_at(lo, false));
    std::size_t v_hi = sign_variations(signs_at(hi, true));
    return v_lo - v_hi;
}

Polynomial parse_polynomial(std::string_view text) {
    std::vector<Rational> coeffs;
    std::size_t start = 0;
    while (true) {
        auto comma = text.find(',', start);
        auto token = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        if (trim_ws(token).empty()) throw std::invalid_argument("empty coefficient in '" + std::string(text) + "'");
        coeffs.push_back(parse_rational(token));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return Polynomial(std::move(coeffs));
}

std::string format_coefficients(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < p.coefficients().size(); ++i) {
        if (i) out += ",";
        out += format_rational(p.coefficients()[i]);
    }
    return out;
}

}  // namespace ehrhart
