#pragma once

// Reference computations that share no code path with the library routines they check.

#include "polyprog/progression/progression.hpp"

#include <random>

namespace polyprog::oracle {

/// Kernel of the map b -> (sum_{i,k} b_ik C(x+P_i(y), k)) sampled on the grid
/// 0 <= x <= cap, 0 <= y <= cap * deg, which determines a polynomial of those degrees.
/// Rows are in the column order of relation_space.
RationalMatrix dense_grid_relations(const Progression& prog, std::size_t cap);

/// True when the relation coefficients b (relation_space column order) give zero at every
/// point of the grid used by dense_grid_relations.
bool vanishes_on_grid(const Progression& prog, std::size_t cap, const RationalVector& b);

/// Rank by Gauss-Jordan elimination.
std::size_t rank(RationalMatrix m);

/// sum_i Q_i(x + P_i(y)) at one point by direct evaluation.
Rational relation_value(const Relation& rel, const Progression& prog, const Rational& x, const Rational& y);

/// Integral polynomial of degree exactly `degree` with Taylor coefficients in [-range, range].
UniPoly random_integral_poly(std::mt19937_64& rng, std::size_t degree, long range);

/// t distinct random integral polynomials with degrees in [1, max_degree].
Progression random_progression(std::mt19937_64& rng, std::size_t t, std::size_t max_degree, long range);

/// (x, x+y, ..., x+ty).
Progression arithmetic_progression(std::size_t t);

}  // namespace polyprog::oracle
