#pragma once

// Exact scalar types shared by every algebraic module.

#include <gmpxx.h>

#include <span>
#include <string>
#include <vector>

namespace polyprog {

using Integer = mpz_class;
using Rational = mpq_class;

/// Builds num/den in lowest terms with a positive denominator.
Rational make_rational(const Integer& num, const Integer& den = 1);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// "3", "-1/2".
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Parses "3", "-7/4"; throws std::invalid_argument on malformed input.
Rational parse_rational(const std::string& text);

/// Least common multiple of all denominators (1 for an empty range).
Integer common_denominator(std::span<const Rational> values);

/// Generalised binomial coefficient C(n, k) = n(n-1)...(n-k+1)/k!, valid for negative n.
Integer binomial(const Integer& n, unsigned k);
Rational binomial(const Rational& u, unsigned k);

Integer factorial(unsigned k);

/// Greatest common divisor of all entries (0 for an all-zero range).
Integer content(std::span<const Integer> values);

using RationalVector = std::vector<Rational>;
using IntegerVector = std::vector<Integer>;

bool is_zero(std::span<const Rational> v);

/// Scales v by the common denominator and divides by the content; the first
/// nonzero entry of the result is positive. The zero vector is returned as is.
IntegerVector primitive_integer_vector(std::span<const Rational> v);

RationalVector to_rational(std::span<const Integer> v);

}  // namespace polyprog
