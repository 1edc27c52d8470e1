#pragma once

#include "polyprog/core/bipoly.hpp"
#include "polyprog/core/matrix.hpp"
#include "polyprog/core/unipoly.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace polyprog {

/// The pattern (x, x+P_1(y), ..., x+P_t(y)). P_0 = 0 is implicit.
class Progression {
public:
    /// Validates that each P_i is integral, nonzero, and that the P_i are distinct.
    /// Throws std::invalid_argument otherwise.
    explicit Progression(std::vector<UniPoly> polys);

    /// Same pattern without the integrality requirement (P_i(0) = 0, nonzero and distinct
    /// are still enforced). Used for reparametrised families whose values need not be integers.
    static Progression general(std::vector<UniPoly> polys);

    std::size_t t() const { return polys_.size(); }
    /// P_i for 0 <= i <= t, with P_0 = 0.
    UniPoly poly(std::size_t i) const;
    const std::vector<UniPoly>& polys() const { return polys_; }
    std::size_t max_degree() const;

    /// "x, x+y, x+2y, x+y^3".
    std::string to_string() const;

    friend bool operator==(const Progression&, const Progression&) = default;

private:
    Progression() = default;
    std::vector<UniPoly> polys_;
};

/// A tuple (Q_0, ..., Q_t) with sum Q_i(x + P_i(y)) = 0 and Q_i(0) = 0.
struct Relation {
    std::vector<UniPoly> qs;

    std::vector<Degree> degree_profile() const;
    /// Largest component degree (nullopt for the zero relation).
    Degree degree() const;
    /// sum Q_i(x + P_i(y)) expanded exactly.
    BiPoly expand(const Progression& prog) const;
    bool holds(const Progression& prog) const { return expand(prog).is_zero(); }
    bool is_zero() const;
    /// Binomial-basis coefficients b_{ik}, k = 1..cap, in the column order of relation_space.
    RationalVector coefficient_vector(std::size_t cap) const;
    static Relation from_coefficients(const RationalVector& b, std::size_t t, std::size_t cap);
    /// "(u^2+2u, -2u^2, u^2, -2u)".
    std::string to_string() const;
};

struct RelationSpace {
    std::vector<Relation> basis;
    std::size_t degree_cap = 0;
    bool stabilized = false;
    std::size_t dimension() const { return basis.size(); }
};

/// max(t-1, max deg P_i + t).
std::size_t default_cap(const Progression& prog);

/// Column of b_{ik} in the relation unknown vector.
inline std::size_t relation_column(std::size_t i, std::size_t k, std::size_t t) { return (k - 1) * (t + 1) + i; }

/// Exact coefficient matrix of sum_{i,k<=cap} b_{ik} C(x+P_i(y), k) in the monomials x^a y^b.
RationalMatrix relation_matrix(const Progression& prog, std::size_t cap);

/// Basis of {a : sum a_i (x+P_i(y))^k = 0}; throws std::invalid_argument when k == 0.
IntegerMatrix homogeneous_relations(const Progression& prog, std::size_t k);

/// All relations with component degrees <= cap; `stabilized` compares dimensions at cap and cap+1.
/// Every basis element is checked by exact expansion (std::logic_error on failure).
RelationSpace relation_space(const Progression& prog, std::size_t cap);

struct ComplexityResult {
    std::vector<std::size_t> values;  // A_i for i = 0..t
    std::size_t cap = 0;
    bool stabilized = false;
};

/// Largest k <= cap such that some relation has deg Q_i = k, for every index i.
ComplexityResult algebraic_complexity(const Progression& prog, std::size_t cap);

/// Single-index form; throws std::out_of_range for i > t.
std::pair<std::size_t, bool> algebraic_complexity(const Progression& prog, std::size_t i, std::size_t cap);

}  // namespace polyprog
