#include "polyprog/cyclic/signal.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <stdexcept>

namespace polyprog {

Complex unit_phase(double theta)
{
    const double frac = theta - std::floor(theta);
    const double angle = 2.0 * std::numbers::pi * frac;
    return {std::cos(angle), std::sin(angle)};
}

namespace {

Complex residue_phase(const Integer& r, std::size_t n)
{
    Integer red;
    mpz_fdiv_r_ui(red.get_mpz_t(), r.get_mpz_t(), n);
    return unit_phase(static_cast<double>(red.get_ui()) / static_cast<double>(n));
}

}  // namespace

Signal::Signal(std::size_t n, std::vector<Complex> v) : N(n), values(std::move(v))
{
    if (values.size() != N) throw std::invalid_argument("signal length does not match modulus");
}

bool Signal::is_one_bounded(double tol) const
{
    for (const auto& z : values)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > 1.0 + tol) return false;
    return true;
}

Complex Signal::mean() const
{
    Complex s = 0;
    for (const auto& z : values) s += z;
    return s / static_cast<double>(N);
}

Signal Signal::constant(std::size_t n, Complex c) { return Signal(n, std::vector<Complex>(n, c)); }

Signal Signal::character(std::size_t n, long xi)
{
    std::vector<Complex> v(n);
    for (std::size_t x = 0; x < n; ++x) v[x] = residue_phase(Integer(xi) * Integer(static_cast<unsigned long>(x)), n);
    return Signal(n, std::move(v));
}

Signal Signal::quadratic_phase(std::size_t n, long a)
{
    std::vector<Complex> v(n);
    for (std::size_t x = 0; x < n; ++x) {
        const Integer xx(static_cast<unsigned long>(x));
        v[x] = residue_phase(Integer(a) * xx * xx, n);
    }
    return Signal(n, std::move(v));
}

Signal Signal::polynomial_phase(std::size_t n, const UniPoly& q, const Integer& scale, long m)
{
    std::vector<Complex> v(n);
    for (std::size_t x = 0; x < n; ++x) {
        const Rational val = q(Rational(static_cast<unsigned long>(x))) * Rational(scale);
        if (!is_integer(val)) throw std::invalid_argument("polynomial_phase: scaled polynomial is not integer valued");
        v[x] = residue_phase(val.get_num() * m, n);
    }
    return Signal(n, std::move(v));
}

std::size_t Subset::size() const
{
    std::size_t s = 0;
    for (bool b : member) s += b ? 1 : 0;
    return s;
}

Signal Subset::indicator() const
{
    std::vector<Complex> v(N);
    for (std::size_t x = 0; x < N; ++x) v[x] = member[x] ? 1.0 : 0.0;
    return Signal(N, std::move(v));
}

Subset Subset::full(std::size_t n) { return Subset{n, std::vector<bool>(n, true)}; }
Subset Subset::empty(std::size_t n) { return Subset{n, std::vector<bool>(n, false)}; }

double unit_interval(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

Subset Subset::random(std::size_t n, double alpha, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    Subset s{n, std::vector<bool>(n)};
    for (std::size_t x = 0; x < n; ++x) s.member[x] = unit_interval(rng()) < alpha;
    return s;
}

Subset Subset::read(const std::string& path, std::size_t n)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open subset file " + path);
    Subset s = empty(n);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(line, &pos);
        } catch (const std::exception&) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": not an integer");
        }
        if (line.find_first_not_of(" \t\r", pos) != std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": trailing characters");
        const long long nn = static_cast<long long>(n);
        s.member[static_cast<std::size_t>(((v % nn) + nn) % nn)] = true;
    }
    return s;
}

Signal random_sign_signal(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<Complex> v(n);
    for (auto& z : v) z = (rng() >> 63) ? 1.0 : -1.0;
    return Signal(n, std::move(v));
}

std::vector<std::size_t> residue_table(const UniPoly& p, std::size_t n)
{
    std::vector<std::size_t> out(n);
    for (std::size_t y = 0; y < n; ++y) {
        const Rational v = p(Rational(static_cast<unsigned long>(y)));
        if (!is_integer(v)) throw std::invalid_argument("residue_table: polynomial is not integer valued");
        Integer r;
        mpz_fdiv_r_ui(r.get_mpz_t(), v.get_num_mpz_t(), n);
        out[y] = r.get_ui();
    }
    return out;
}

bool is_prime(std::size_t n) { return n >= 2 && mpz_probab_prime_p(Integer(static_cast<unsigned long>(n)).get_mpz_t(), 30) > 0; }

}  // namespace polyprog
