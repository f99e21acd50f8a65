#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dqi/rational.hpp"

namespace dqi {

// Exponent of each ambient coordinate; its length is the ambient dimension.
using ExponentVector = std::vector<std::uint32_t>;

ExponentVector zero_exponent(std::size_t dim);
ExponentVector unit_exponent(std::size_t dim, std::size_t i);
std::uint32_t total_degree(const ExponentVector &e);

// All exponent vectors of the given dimension with total degree in
// [min_degree, max_degree], graded then lexicographic.
std::vector<ExponentVector> exponents_up_to(std::size_t dim, unsigned max_degree,
                                            unsigned min_degree = 0);

// Multivariate polynomial with exact rational coefficients. Terms are kept in
// a map ordered lexicographically on exponent vectors; zero coefficients are
// never stored.
class Polynomial {
public:
    using Terms = std::map<ExponentVector, Rational>;

    explicit Polynomial(std::size_t dim = 0);

    static Polynomial constant(std::size_t dim, const Rational &c);
    static Polynomial variable(std::size_t dim, std::size_t i);
    static Polynomial monomial(ExponentVector e, const Rational &c = 1);

    std::size_t dim() const noexcept { return dim_; }
    const Terms &terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const;
    // -1 for the zero polynomial.
    int degree() const;
    Rational coefficient(const ExponentVector &e) const;
    Rational constant_term() const;

    // Accumulates c * x^e; the term disappears if the sum cancels.
    void add_term(const ExponentVector &e, const Rational &c);

    Rational evaluate(std::span<const Rational> point) const;

    Polynomial &operator+=(const Polynomial &rhs);
    Polynomial &operator-=(const Polynomial &rhs);
    Polynomial &operator*=(const Rational &c);

    friend Polynomial operator+(Polynomial a, const Polynomial &b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial &b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Rational &c) { return a *= c; }
    friend Polynomial operator*(const Rational &c, Polynomial a) { return a *= c; }
    friend Polynomial operator*(const Polynomial &a, const Polynomial &b);
    friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }

    friend bool operator==(const Polynomial &a, const Polynomial &b)
    {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }

private:
    void check_dim(const Polynomial &other) const;

    std::size_t dim_;
    Terms terms_;
};

// Exact product; throws DimensionError on mismatched ambient dimensions.
Polynomial poly_mul(const Polynomial &p, const Polynomial &q);

// d/dx_i. Throws ArgumentError if i is out of range.
Polynomial partial(const Polynomial &p, std::size_t i);

// Mixed partial derivative d^alpha.
Polynomial partial(const Polynomial &p, const ExponentVector &alpha);

Polynomial pow(const Polynomial &p, unsigned k);

// Substitutes polynomials for the coordinates: p(values[0], values[1], ...).
Polynomial compose(const Polynomial &p, std::span<const Polynomial> values);

// Canonical textual form, e.g. "-2*x^2*p + 1/2". Terms appear in descending
// exponent order. Coordinates without names are printed as x0, x1, ...
std::string to_string(const Polynomial &p, std::span<const std::string> names = {});

// Parses the textual polynomial syntax: rational literals, the declared
// variable names, + - * ^ and parentheses. Division is allowed by rational
// literals only. Throws ParseError with a character offset.
Polynomial parse_polynomial(std::string_view text, std::span<const std::string> names);

} // namespace dqi
