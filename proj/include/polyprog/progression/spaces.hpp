#pragma once

// The graded polynomial spaces W_k, their intersections with the other degrees, and the
// coefficient spaces in Q^{t+1} attached to them.

#include "polyprog/progression/progression.hpp"

#include <optional>

namespace polyprog {

struct GradedLevel {
    std::size_t k = 0;
    std::vector<BiPoly> w;        // basis of W_k (the tau basis)
    std::vector<BiPoly> w_c;      // basis of W_k ∩ sum_{j != k} W_j, primitive integer form
    std::vector<BiPoly> w_prime;  // representatives of W_k / W^c_k drawn from `w`
    std::size_t dim_w() const { return w.size(); }
    std::size_t dim_w_prime() const { return w_prime.size(); }
};

struct GradedSpaces {
    std::size_t cap = 0;
    std::vector<GradedLevel> levels;  // levels[k-1] for k = 1..k_max
    /// Basis of W^c = sum_k W^c_k over the computed levels.
    std::vector<BiPoly> w_c_total;
};

/// Requires 1 <= k_max <= cap.
GradedSpaces graded_spaces(const Progression& prog, std::size_t k_max, std::size_t cap);

/// W^c_k obtained as the image of degree-k blocks of the relation space instead of by
/// intersecting subspaces. Agrees with graded_spaces; cheaper for large caps.
std::vector<BiPoly> complementary_space_from_relations(const Progression& prog, const RelationSpace& rs,
                                                       std::size_t k);

struct TauPair {
    BiPoly q;           // Q_{k,j}
    RationalVector v;   // tau_k(Q_{k,j})
};

struct CoeffSpace {
    std::size_t k = 0;
    RationalMatrix basis;        // basis of P_k in Q^{t+1}
    std::vector<TauPair> tau;    // C(P(x,y), k) = sum_j v_j Q_j
    bool definitions_agree = false;  // the monomial/binomial, degree k / degrees <= k spans coincide
};

/// Builds the tau decomposition by top-reducing C(x+P_i(y), k), in order of i, against the
/// basis elements found so far (monomials ordered by x exponent, then y exponent); each
/// nonzero residual becomes a new basis element.
CoeffSpace coeff_space(const Progression& prog, std::size_t k);

struct HomogeneityResult {
    bool homogeneous = true;
    std::size_t cap = 0;
    bool stabilized = false;
    std::optional<std::size_t> witness_degree;
    std::optional<BiPoly> witness_polynomial;  // nonzero element of W^c_k
    std::optional<Relation> witness_relation;  // inhomogeneous relation producing it
};

HomogeneityResult is_homogeneous(const Progression& prog, std::size_t cap);

/// Dimension of the span of homogeneous relations of degrees 1..cap (binomial form).
std::size_t homogeneous_relation_dimension(const Progression& prog, std::size_t cap);

struct VandermondeResult {
    bool holds = true;
    std::size_t max_complexity = 0;
    std::size_t bound = 0;  // t - 1
    std::optional<Relation> violation;
};

/// Checks max_i A_i <= t-1 for a homogeneous progression; throws std::invalid_argument otherwise.
VandermondeResult vandermonde_bound_check(const Progression& prog, std::optional<std::size_t> cap = std::nullopt);

/// The reparametrised family ((P_i(r(y-1)+j) - P_i(j)) / r)_i, shifted by y -> y+1 so that it
/// vanishes at y = 0. The shift leaves every relation space unchanged.
Progression reparametrize(const Progression& prog, long r, long j);

struct EligibilityResult {
    bool eligible = true;
    std::size_t r_max = 0;
    std::optional<std::pair<long, long>> witness;  // failing (r, j)
    std::string reason;
};

/// Checks homogeneity and equality of every A_i for all r <= r_max and 0 <= j < r.
/// Throws std::invalid_argument when prog is inhomogeneous.
EligibilityResult is_eligible(const Progression& prog, std::size_t r_max, std::optional<std::size_t> cap = std::nullopt);

}  // namespace polyprog
