#include "polyprog/core/rational.hpp"

#include <stdexcept>

namespace polyprog {

Rational make_rational(const Integer& num, const Integer& den)
{
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

Rational parse_rational(const std::string& text)
{
    auto trimmed = text;
    std::erase_if(trimmed, [](char c) { return c == ' ' || c == '\t'; });
    if (trimmed.empty()) throw std::invalid_argument("empty rational literal");
    Rational q;
    if (q.set_str(trimmed, 10) != 0)
        throw std::invalid_argument("malformed rational literal '" + text + "'");
    if (q.get_den() == 0) throw std::invalid_argument("rational with zero denominator");
    q.canonicalize();
    return q;
}

Integer common_denominator(std::span<const Rational> values)
{
    Integer l = 1;
    for (const auto& q : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    return l;
}

Integer factorial(unsigned k)
{
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), k);
    return f;
}

Integer binomial(const Integer& n, unsigned k)
{
    // mpz_bin_ui accepts negative n with the polynomial convention.
    Integer r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

Rational binomial(const Rational& u, unsigned k)
{
    if (is_integer(u)) return Rational(binomial(u.get_num(), k));
    Rational acc = 1;
    for (unsigned i = 0; i < k; ++i) acc *= (u - i);
    acc /= Rational(factorial(k));
    return acc;
}

Integer content(std::span<const Integer> values)
{
    Integer g = 0;
    for (const auto& z : values) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    return g;
}

bool is_zero(std::span<const Rational> v)
{
    for (const auto& q : v)
        if (q != 0) return false;
    return true;
}

IntegerVector primitive_integer_vector(std::span<const Rational> v)
{
    const Integer den = common_denominator(v);
    IntegerVector out;
    out.reserve(v.size());
    for (const auto& q : v) out.push_back(Integer(q.get_num() * (den / q.get_den())));
    const Integer g = content(out);
    if (g == 0) return out;
    int sign = 0;
    for (const auto& z : out)
        if (z != 0) {
            sign = sgn(z);
            break;
        }
    for (auto& z : out) z = z / g * sign;
    return out;
}

RationalVector to_rational(std::span<const Integer> v)
{
    RationalVector out;
    out.reserve(v.size());
    for (const auto& z : v) out.emplace_back(z);
    return out;
}

}  // namespace polyprog
