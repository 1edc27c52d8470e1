#pragma once

// Polynomial sequences on tori, standard Weyl systems, characters and multiple averages.

#include "polyprog/cyclic/signal.hpp"
#include "polyprog/progression/progression.hpp"
#include "polyprog/weyl/real.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace polyprog {

using Point = std::vector<Turn>;

/// A named real number. Parameters are treated as rationally independent together with 1
/// unless a dependency is declared for them.
struct Parameter {
    std::string name;
    RealExpr value;
};

/// constant + sum_p coeffs[p] * parameter_p.
struct LinearForm {
    Rational constant;
    std::vector<Rational> coeffs;

    bool is_constant() const;
};

/// g(n) = sum_{l=0..s} C(n, l) g_l on T^s, with g_l in G_l = {0}^{l-1} x R^{s-l+1}.
struct PolySequence {
    std::size_t s = 0;
    std::vector<Parameter> params;
    std::vector<std::vector<LinearForm>> g;  // g[l][c], l = 0..s, c = 0..s-1

    /// Throws std::invalid_argument on shape errors or when g_l leaves G_l.
    void validate() const;
    std::size_t param_index(const std::string& name) const;
};

/// Fixed-point evaluation of a PolySequence.
class SequenceEvaluator {
public:
    explicit SequenceEvaluator(const PolySequence& seq);
    std::size_t dimension() const { return s_; }
    /// g(n) written to out[0..s).
    void at(long long n, Turn* out) const;
    Point at(long long n) const;
    const Point& coefficient(std::size_t l) const { return g_[l]; }

private:
    std::size_t s_;
    std::vector<Point> g_;
};

/// T(a_1, ..., a_s) = (a_1 + a_0, a_2 + a_1, ..., a_s + a_{s-1}) on T^s.
class WeylSystem {
public:
    /// a0 is asserted irrational by the caller; base has s entries.
    WeylSystem(std::size_t s, RealExpr a0, std::vector<RealExpr> base);

    std::size_t order() const { return s_; }
    const RealExpr& rotation() const { return a0_; }
    const std::vector<RealExpr>& base() const { return base_; }
    Point base_point() const;
    Point apply(const Point& p) const;

    /// The orbit n -> T^n a as a polynomial sequence; parameters "a0" and "a1".."as"
    /// (rational base coordinates are folded into constants).
    PolySequence sequence() const;

private:
    std::size_t s_;
    RealExpr a0_;
    std::vector<RealExpr> base_;
    Turn a0_turn_;
};

/// T^n a = sum_l C(n, l) g_l with g_l = (a_{1-l}, ..., a_{s-l}) and a_{-k} = 0.
Point orbit_point(const WeylSystem& w, long long n);

struct TorusCharacter {
    std::vector<long long> freq;

    /// freq . p mod 1.
    Turn phase(const Point& p) const;
    Complex operator()(const Point& p) const { return unit_phase(turn_to_double(phase(p))); }
    bool is_trivial() const;
};

enum class AverageMode {
    two_parameter,  // E_{m,n < N} prod_i chi_i(T^{m + P_i(n)} a)
    single,         // E_{n < N} prod_i chi_i(T^{P_i(n)} a)
};

/// Requires t+1 characters of dimension s.
Complex multiple_average(const WeylSystem& w, const std::vector<TorusCharacter>& chars, const Progression& prog,
                         std::size_t N, AverageMode mode = AverageMode::two_parameter, unsigned threads = 1);

enum class Projection { retained, vanishes };

/// E(chi | Z_k): chi itself when every frequency past coordinate k is zero, otherwise 0.
Projection factor_projection(const TorusCharacter& chi, std::size_t k);

struct WitnessRecord {
    std::vector<TorusCharacter> chars;
    Integer multiplier;                  // h times the common denominator of all b_{k,j}
    bool symbolic_identity = false;      // sum_k (Delta^m Q_k)(x + P_k(y)) = 0 for m = 0..s
    double max_deviation = 0;            // max |prod_i f_i(T^{x+P_i(y)} a) - 1| over the samples
    std::size_t samples = 0;
    std::vector<bool> last_coefficient_nonzero;  // b_{i,s} != 0
    std::vector<bool> kills_factor;              // E(f_i | Z_{s-1}) = 0
    bool classification_matches = false;
};

/// f_k = e(h L (b_{k,1} a_1 + ... + b_{k,s} a_s)) where Q_k = sum_j b_{k,j} C(u, j) and L clears
/// the denominators, checked at `samples` random (x, y) in [0, range)^2.
/// Throws std::invalid_argument when deg rel > s, h == 0, or rel is not a relation.
WitnessRecord lower_bound_witness(const Progression& prog, const Relation& rel, const WeylSystem& w, long h = 1,
                                  std::size_t samples = 1000, std::uint64_t seed = 1, long long range = 10000);

/// P(0), ..., P(n-1) as 64-bit integers; throws std::overflow_error if a value does not fit.
std::vector<long long> integer_values(const UniPoly& p, std::size_t n);

}  // namespace polyprog
