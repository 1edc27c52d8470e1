#pragma once

// Exact linear algebra over Q. Matrices are row lists; subspaces are given by spanning rows.

#include "polyprog/core/rational.hpp"

#include <cstddef>
#include <vector>

namespace polyprog {

using RationalMatrix = std::vector<RationalVector>;
using IntegerMatrix = std::vector<IntegerVector>;

struct RowEchelon {
    RationalMatrix rows;            // reduced rows, one per pivot
    std::vector<std::size_t> pivots;  // pivot column of each row, increasing
};

/// Reduced row echelon form with leading ones.
RowEchelon rref(const RationalMatrix& a, std::size_t cols);

std::size_t rank(const RationalMatrix& a, std::size_t cols);

/// Basis of {v : a v = 0}, one vector per free column. Elimination is fraction free
/// (rows are kept as primitive integer vectors) and pivots are taken from the largest
/// column index downward, so free columns are the smallest indices. Each kernel vector
/// is primitive with a positive entry at its free column.
IntegerMatrix kernel(const RationalMatrix& a, std::size_t cols);

/// Reduced basis of the row space of the given vectors.
RationalMatrix span_basis(const RationalMatrix& vectors, std::size_t dim);

bool in_span(const RationalMatrix& basis, const RationalVector& v, std::size_t dim);

/// True when every row of `sub` lies in the span of `whole`.
bool subspace_of(const RationalMatrix& sub, const RationalMatrix& whole, std::size_t dim);

/// Basis of span(u) + span(v).
RationalMatrix subspace_sum(const RationalMatrix& u, const RationalMatrix& v, std::size_t dim);

/// Basis of span(u) ∩ span(v), computed from the kernel of the stacked generators.
RationalMatrix subspace_intersection(const RationalMatrix& u, const RationalMatrix& v, std::size_t dim);

/// Vectors from `candidates` (in order) that extend `sub` to a basis of span(sub + candidates).
RationalMatrix complete_basis(const RationalMatrix& sub, const RationalMatrix& candidates, std::size_t dim);

/// Coefficients c with sum c_i basis_i = v; basis must be linearly independent and v in its span.
/// Throws std::domain_error otherwise.
RationalVector coordinates(const RationalMatrix& basis, const RationalVector& v, std::size_t dim);

/// Transpose of an r x c matrix.
RationalMatrix transpose(const RationalMatrix& a, std::size_t cols);

/// a * v.
RationalVector mat_vec(const RationalMatrix& a, const RationalVector& v);

RationalMatrix to_rational(const IntegerMatrix& m);

}  // namespace polyprog
