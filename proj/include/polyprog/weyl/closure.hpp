#pragma once

// Orbit closures of g^P(x, y) = (g(x + P_0(y)), ..., g(x + P_t(y))) on T^{s(t+1)}.
//
// Coordinates of R^{s(t+1)} are ordered torus coordinate first: entry c(t+1) + i holds
// coordinate c of the i-th point, so v (x) e_c occupies the c-th block of length t+1.

#include "polyprog/weyl/system.hpp"

#include <optional>
#include <string>
#include <vector>

namespace polyprog {

/// sum_p coeffs[p] * parameter_p = value, declared by the user.
struct Dependency {
    std::vector<Rational> coeffs;
    Rational value;
    std::string text;
};

/// Parses "b - a = 1/3" against the parameter names of seq; throws std::invalid_argument
/// on syntax errors, unknown names, or a dependency that fails numerically at 320 bits.
Dependency parse_dependency(const std::string& text, const PolySequence& seq);

/// Parses "2*a + 1/3" against the parameter names of seq.
LinearForm parse_linear_form(const std::string& text, const PolySequence& seq);

struct AffineClosure {
    std::size_t ambient = 0;  // s(t+1)
    Point offset;             // g_0 repeated in every block
    RationalMatrix g_p;       // sum_l P_l (x) G_l
    RationalMatrix k_basis;   // sum_l P'_l (x) G_l
    RationalMatrix subspace_basis;  // G~, the directions reached by irrational coefficients
    IntegerMatrix annihilators;     // Z-basis of the integer characters vanishing on G~
    std::vector<RationalVector> coset_shifts;  // translates actually visited; first is 0
    Integer coset_bound = 1;        // lcm of the denominators of the declared values
    std::vector<Dependency> declared;
    bool contains_k = false;
    std::size_t dimension() const { return subspace_basis.size(); }
};

/// Throws std::invalid_argument on malformed or inconsistent dependencies.
AffineClosure closure_subspaces(const Progression& prog, const PolySequence& seq, const std::vector<Dependency>& deps);
AffineClosure closure_subspaces(const Progression& prog, const WeylSystem& w, const std::vector<Dependency>& deps);

/// Largest distance from an orbit tuple (x, y in [0, N)) to the union of the closure cosets,
/// measured as max_l || eta_l . (p - offset - shift) ||_{R/Z} over the annihilator basis and
/// minimised over the cosets.
double closure_distance(const PolySequence& seq, const Progression& prog, const AffineClosure& closure, std::size_t N,
                        unsigned threads = 1);

struct EquidistributionOptions {
    int radius = 3;
    std::size_t max_samples = 8192;  // full grid when N^2 fits, otherwise seeded random pairs
    std::uint64_t seed = 1;
    std::size_t top = 20;
    unsigned threads = 1;
};

struct DiscrepancyRow {
    std::vector<long long> freq;  // coordinates on G~ (nontrivial rows) or on Z^{s(t+1)} (annihilator rows)
    double magnitude = 0;
    double phase = 0;  // argument / 2 pi of the average
    std::string kind;  // "nontrivial", "annihilator" or "trivial"
};

struct DiscrepancyTable {
    std::size_t N = 0;
    std::size_t samples = 0;
    bool full_grid = false;
    int radius = 0;
    std::size_t characters = 0;   // nontrivial characters of G~ examined, up to sign
    double max_nontrivial = 0;
    std::vector<DiscrepancyRow> rows;  // trivial row, annihilator rows, then the largest nontrivial rows
};

/// Averages of e(m . c(x, y)) over orbit tuples, c the coordinates of p - offset along a Z-basis
/// of G~ ∩ Z^{s(t+1)}, for every nonzero m in [-radius, radius]^dim up to sign; plus the
/// annihilator characters and their multiples up to the coset bound.
DiscrepancyTable equidistribution_test(const PolySequence& seq, const Progression& prog, const AffineClosure& closure,
                                       std::size_t N, const EquidistributionOptions& opt = {});

}  // namespace polyprog
