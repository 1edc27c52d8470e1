#pragma once

// Integer lattices in Z^n given by generating rows.

#include "polyprog/core/matrix.hpp"

namespace polyprog {

/// Row Hermite normal form of the lattice generated by the rows (zero rows dropped).
/// Pivots have positive leading entries and the entries above each pivot are reduced
/// into [0, pivot).
IntegerMatrix hermite_normal_form(const IntegerMatrix& rows, std::size_t cols);

/// Z-basis of {v in Z^cols : a v = 0}.
IntegerMatrix integer_kernel(const IntegerMatrix& a, std::size_t cols);

/// Z-basis of span_Q(rows) ∩ Z^cols.
IntegerMatrix saturation(const IntegerMatrix& rows, std::size_t cols);

struct UnimodularCompletion {
    IntegerMatrix basis;  // square; first rows span the input lattice
    IntegerMatrix dual;   // inverse transpose: basis[i] . dual[j] = [i == j]
};

/// Extends a Z-basis of a saturated sublattice to a basis of Z^cols.
/// Throws std::invalid_argument when the rows are dependent or not saturated.
UnimodularCompletion complete_unimodular(const IntegerMatrix& rows, std::size_t cols);

/// True when both row sets generate the same lattice.
bool same_lattice(const IntegerMatrix& a, const IntegerMatrix& b, std::size_t cols);

}  // namespace polyprog
