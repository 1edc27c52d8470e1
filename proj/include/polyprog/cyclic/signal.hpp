#pragma once

#include "polyprog/core/unipoly.hpp"

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace polyprog {

using Complex = std::complex<double>;

/// exp(2 pi i theta).
Complex unit_phase(double theta);

/// A function Z/NZ -> C.
struct Signal {
    std::size_t N = 0;
    std::vector<Complex> values;

    Signal() = default;
    Signal(std::size_t n, std::vector<Complex> v);

    Complex operator[](std::size_t x) const { return values[x]; }
    /// max |f(x)| <= 1 + tol.
    bool is_one_bounded(double tol = 1e-12) const;
    Complex mean() const;

    static Signal constant(std::size_t n, Complex c);
    /// x -> e(xi x / N).
    static Signal character(std::size_t n, long xi);
    /// x -> e(a x^2 / N), with x^2 reduced exactly.
    static Signal quadratic_phase(std::size_t n, long a = 1);
    /// x -> e((c Q(x) mod N) / N) for a polynomial with integer values on integers scaled by c.
    static Signal polynomial_phase(std::size_t n, const UniPoly& q, const Integer& scale, long m = 1);
};

/// A subset of Z/NZ stored as a membership mask.
struct Subset {
    std::size_t N = 0;
    std::vector<bool> member;

    std::size_t size() const;
    double density() const { return N ? static_cast<double>(size()) / static_cast<double>(N) : 0.0; }
    bool contains(std::size_t x) const { return member[x]; }
    Signal indicator() const;

    static Subset full(std::size_t n);
    static Subset empty(std::size_t n);
    /// Each residue kept independently with probability alpha (mt19937_64 with the given seed).
    static Subset random(std::size_t n, double alpha, std::uint64_t seed);
    /// One residue per line; blank lines and '#' comments ignored. Throws on out-of-range entries.
    static Subset read(const std::string& path, std::size_t n);
};

/// Independent +-1 values (mt19937_64 with the given seed).
Signal random_sign_signal(std::size_t n, std::uint64_t seed);

/// Uniform double in [0, 1) from a 64-bit draw, identical on every platform.
double unit_interval(std::uint64_t bits);

/// P(y) mod N for y = 0..N-1, computed exactly.
std::vector<std::size_t> residue_table(const UniPoly& p, std::size_t n);

bool is_prime(std::size_t n);

}  // namespace polyprog
