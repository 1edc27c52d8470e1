#pragma once

#include "polyprog/core/matrix.hpp"
#include "polyprog/core/rational.hpp"
#include "polyprog/core/unipoly.hpp"

#include <deque>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace polyprog {

/// Exponent pair (a, b) standing for x^a y^b, or for C(x,a) C(y,b) in the binomial view.
using Exponent = std::pair<unsigned, unsigned>;

/// Sparse bivariate polynomial over Q in x and y. Zero coefficients are never stored.
class BiPoly {
public:
    using Terms = std::map<Exponent, Rational>;

    BiPoly() = default;
    explicit BiPoly(Terms terms);

    static BiPoly constant(const Rational& c);
    static BiPoly monomial(unsigned a, unsigned b, const Rational& c = 1);
    static BiPoly in_x(const UniPoly& p);
    static BiPoly in_y(const UniPoly& p);
    /// Sum of c * C(x,a) C(y,b) over the given binomial-view terms.
    static BiPoly from_binomial_view(const Terms& binomial_terms);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coeff(unsigned a, unsigned b) const;
    unsigned degree_x() const;
    unsigned degree_y() const;

    Rational operator()(const Rational& x, const Rational& y) const;

    BiPoly& operator+=(const BiPoly& o);
    BiPoly& operator-=(const BiPoly& o);
    BiPoly& operator*=(const Rational& c);
    friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
    friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
    friend BiPoly operator*(BiPoly a, const Rational& c) { return a *= c; }
    friend BiPoly operator*(const Rational& c, BiPoly a) { return a *= c; }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b);

    friend bool operator==(const BiPoly&, const BiPoly&) = default;

private:
    void add_term(const Exponent& e, const Rational& c);
    Terms terms_;
};

/// Coefficients of C(x,a) C(y,b); exact inverse of BiPoly::from_binomial_view.
BiPoly::Terms to_binomial_view(const BiPoly& r);

/// R(x+1, y) - R(x, y).
BiPoly partial_discrete_derivative_x(const BiPoly& r);

/// Q(x + P(y)) expanded.
BiPoly compose_shifted(const UniPoly& q, const UniPoly& p);

/// C(x + P(y), k) expanded; memoised per (P, k) by the caller through BinomialShiftTable.
BiPoly binomial_shifted(const UniPoly& p, unsigned k);

/// Caches C(x + P(y), k) for k = 0, 1, 2, ... using C(u,k) = C(u,k-1)(u-k+1)/k.
class BinomialShiftTable {
public:
    explicit BinomialShiftTable(UniPoly p);
    const BiPoly& operator()(unsigned k);
    const UniPoly& shift_poly() const { return p_; }

private:
    UniPoly p_;
    BiPoly base_;  // x + P(y)
    std::deque<BiPoly> table_;  // stable references while growing
};

/// Assigns vector coordinates to the monomials of a family of polynomials so that
/// spans of BiPolys can be handled by the matrix routines.
class MonomialIndex {
public:
    void add(const BiPoly& r);
    std::size_t size() const { return index_.size(); }
    RationalVector coordinates(const BiPoly& r) const;
    BiPoly polynomial(const RationalVector& v) const;

private:
    std::map<Exponent, std::size_t> index_;
    std::vector<Exponent> exponents_;
};

/// Canonical text in whichever of the monomial and binomial views has fewer terms
/// ("xy+C(y,2)"), preferring the monomial view on ties when its coefficients are integers. Terms ordered by total degree, then by descending x exponent.
std::string render(const BiPoly& r);

}  // namespace polyprog
