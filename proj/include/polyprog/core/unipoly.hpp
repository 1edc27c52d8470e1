#pragma once

#include "polyprog/core/rational.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace polyprog {

/// Degree of a polynomial; std::nullopt stands for the degree of the zero polynomial.
using Degree = std::optional<std::size_t>;

/// Univariate polynomial with exact rational coefficients in the monomial basis.
/// Coefficients are stored by degree with no trailing zeros.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> coefficients);

    static UniPoly constant(const Rational& c);
    static UniPoly monomial(std::size_t k, const Rational& c = 1);
    /// The Taylor monomial C(u, k).
    static UniPoly binomial(std::size_t k);
    /// Inverse of to_binomial_basis: sum of b[k] * C(u, k).
    static UniPoly from_binomial_basis(std::span<const Rational> b);

    Degree degree() const;
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Rational>& coefficients() const { return coeffs_; }
    /// Monomial coefficient of u^k (zero past the degree).
    Rational coeff(std::size_t k) const;

    Rational operator()(const Rational& u) const;

    UniPoly& operator+=(const UniPoly& o);
    UniPoly& operator-=(const UniPoly& o);
    UniPoly& operator*=(const Rational& c);
    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator*(UniPoly a, const Rational& c) { return a *= c; }
    friend UniPoly operator*(const Rational& c, UniPoly a) { return a *= c; }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    UniPoly operator-() const { return *this * Rational(-1); }

    /// p(q(u)).
    UniPoly compose(const UniPoly& inner) const;

    friend bool operator==(const UniPoly&, const UniPoly&) = default;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

/// Coefficients b_0..b_d with p(u) = sum b_k C(u, k); empty for the zero polynomial.
std::vector<Rational> to_binomial_basis(const UniPoly& p);

/// p(u+1) - p(u).
UniPoly discrete_derivative(const UniPoly& p);

/// True when p(Z) is contained in Z, i.e. all binomial coefficients are integers.
bool is_integer_valued(const UniPoly& p);

/// Integer valued with p(0) = 0.
bool is_integral(const UniPoly& p);

/// (p(r(y-1)+j) - p(j)) / r for r >= 1; throws std::invalid_argument when r == 0.
UniPoly substitute_affine(const UniPoly& p, long r, long j);

/// p(u + c).
UniPoly shift(const UniPoly& p, const Rational& c);

/// Lowest common denominator of the monomial coefficients.
Integer common_denominator(const UniPoly& p);

/// Canonical text in the variable `var`: ascending degree, integer monomial coefficients
/// when possible ("2y-y^3"), otherwise the Taylor form ("C(y,2)+3C(y,3)").
std::string render(const UniPoly& p, char var = 'y');

}  // namespace polyprog
