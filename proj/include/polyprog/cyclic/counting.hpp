#pragma once

#include "polyprog/core/matrix.hpp"
#include "polyprog/cyclic/signal.hpp"
#include "polyprog/progression/progression.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyprog {

/// E_{x,y in Z/NZ} prod_i f_i(x + P_i(y)). Requires t+1 signals on a common modulus.
Complex count_operator(const std::vector<Signal>& f, const Progression& prog, unsigned threads = 1);

inline constexpr std::uint64_t kDefaultLoopBudget = std::uint64_t{1} << 31;

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// E_{x,y_1..y_d} prod_i f_i(x + sum_j a_ij y_j), where row i of `a` holds a_i1..a_id
/// (row 0 is usually zero). Throws BudgetExceeded when N^{d+1} > budget.
Complex linear_count_operator(const std::vector<Signal>& f, const IntegerMatrix& a, std::size_t d,
                              unsigned threads = 1, std::uint64_t budget = kDefaultLoopBudget);

/// Integer-valued Q_1..Q_d and integers a_ij with P_i = sum_j a_ij Q_j. The Q_j form a Z-basis
/// of the integer combinations of the P_i; a subset of the P_i is used when one suffices.
struct LinearModel {
    std::vector<UniPoly> q;
    IntegerMatrix a;  // (t+1) x d, row 0 zero
    bool basis_from_progression = false;
};

LinearModel linear_model(const Progression& prog);

struct CountReport {
    Complex poly_count;
    Complex linear_count;
    double difference = 0;
    std::size_t N = 0;
    LinearModel model;
};

/// Thrown when a progression has algebraic complexity above 1; carries the offending relation.
struct ComplexityTooHigh : std::invalid_argument {
    ComplexityTooHigh(const std::string& msg, Relation witness)
        : std::invalid_argument(msg), relation(std::move(witness)) {}
    Relation relation;
};

/// Polynomial count against its linear model for the indicator of A.
/// Requires N prime and every A_i <= 1 (ComplexityTooHigh otherwise).
CountReport compare_poly_vs_linear(const Subset& a, const Progression& prog, std::optional<std::size_t> cap = std::nullopt,
                                   unsigned threads = 1, std::uint64_t budget = kDefaultLoopBudget);

struct PopDiffReport {
    double alpha = 0;
    double epsilon = 0;
    double threshold = 0;  // (alpha^{t+1} - epsilon) N
    std::vector<std::size_t> qualifying;
    std::vector<std::size_t> intersection_sizes;  // indexed by n
    double fraction = 0;
    std::size_t N = 0;
};

/// For every n, |A ∩ (A+P_1(n)) ∩ ... ∩ (A+P_t(n))| against (alpha^{t+1} - epsilon) N with alpha = |A|/N.
PopDiffReport popular_differences(const Subset& a, const Progression& prog, double epsilon, unsigned threads = 1);

/// f_i(u) = e(m (L Q_i(u) mod N) / N), L the common denominator of all Q_i.
/// Throws std::invalid_argument when gcd(L, N) > 1, m = 0 mod N, or the relation does not hold.
std::vector<Signal> build_obstruction(const Progression& prog, const Relation& rel, std::size_t N, long m = 1);

struct ProbeRow {
    std::string kind;  // "random", "obstruction" or "zero"
    std::size_t trial = 0;
    double norm = 0;  // ||f_i||_{U^{s+1}}
    double count_abs = 0;
};

struct ProbeTable {
    std::size_t index = 0;
    unsigned s = 0;
    std::size_t N = 0;
    std::optional<Relation> relation;  // source of the structured signals in the other slots
    std::vector<ProbeRow> rows;
};

/// Random +-1 signals in slot i against obstruction signals in the other slots, plus one
/// obstruction row and one zero row.
ProbeTable true_complexity_probe(const Progression& prog, std::size_t i, unsigned s, std::size_t trials, std::size_t N,
                                 std::uint64_t seed, unsigned threads = 1);

}  // namespace polyprog
