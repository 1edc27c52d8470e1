#pragma once

// Catalog irrationals and fixed-point torus coordinates.
//
// A point of R/Z is stored as an unsigned 128-bit integer counting units of 2^-128, so
// integer multiples and sums reduce mod 1 for free and stay exact up to the initial
// rounding of each coefficient.

#include "polyprog/core/rational.hpp"

#include <string>
#include <vector>

namespace polyprog {

using Turn = unsigned __int128;

/// floor(frac(q) * 2^128).
Turn turn_from_rational(const Rational& q);
/// The representative in [0, 1).
double turn_to_double(Turn t);
/// Representative in [-1/2, 1/2).
double turn_to_signed(Turn t);
/// min(|a-b|, 1-|a-b|).
double wrap_distance(Turn a, Turn b);
/// (n * t) mod 1, exact in the integer n.
Turn turn_times(const Integer& n, Turn t);
inline Turn turn_times(long long n, Turn t) { return static_cast<Turn>(static_cast<__int128>(n)) * t; }
/// C(n, k) mod 2^128, exact for every integer n.
Turn binomial_mod_2_128(long long n, unsigned k);

/// Names accepted in real expressions.
const std::vector<std::string>& catalog_symbols();

/// A real number c_0 + sum c_j K_j with rational c_j and catalog constants K_j
/// (sqrt2, sqrt3, sqrt5, sqrt7, golden, e, pi). Text form: "sqrt2 + 1/3", "-2*pi", "3/2".
class RealExpr {
public:
    RealExpr() = default;
    explicit RealExpr(const Rational& q);
    /// Throws std::invalid_argument with the offending position on malformed text.
    static RealExpr parse(const std::string& text);

    bool is_rational() const { return terms_.empty(); }
    const Rational& rational_part() const { return constant_; }
    /// frac(value) as a turn, from a 320-bit evaluation.
    Turn turn() const;
    double approx() const;
    /// |value - q| < 2^-200 (evaluated at 320 bits).
    bool equals(const Rational& q) const;
    std::string to_string() const;

    friend RealExpr operator+(const RealExpr& a, const RealExpr& b);
    friend RealExpr operator*(const Rational& c, const RealExpr& a);
    friend RealExpr operator-(const RealExpr& a, const RealExpr& b) { return a + Rational(-1) * b; }

private:
    Rational constant_;
    std::vector<std::pair<std::string, Rational>> terms_;  // sorted by symbol, nonzero coefficients
};

}  // namespace polyprog
