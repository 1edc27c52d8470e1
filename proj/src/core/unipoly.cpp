#include "polyprog/core/unipoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace polyprog {

UniPoly::UniPoly(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

void UniPoly::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

UniPoly UniPoly::constant(const Rational& c) { return UniPoly({c}); }

UniPoly UniPoly::monomial(std::size_t k, const Rational& c)
{
    std::vector<Rational> v(k + 1);
    v[k] = c;
    return UniPoly(std::move(v));
}

UniPoly UniPoly::binomial(std::size_t k)
{
    // u(u-1)...(u-k+1)/k!
    UniPoly acc = constant(1);
    for (std::size_t i = 0; i < k; ++i) acc = acc * UniPoly({Rational(-static_cast<long>(i)), Rational(1)});
    acc *= Rational(1, 1) / Rational(factorial(static_cast<unsigned>(k)));
    return acc;
}

UniPoly UniPoly::from_binomial_basis(std::span<const Rational> b)
{
    UniPoly acc;
    for (std::size_t k = 0; k < b.size(); ++k)
        if (b[k] != 0) acc += binomial(k) * b[k];
    return acc;
}

Degree UniPoly::degree() const
{
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.size() - 1;
}

Rational UniPoly::coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }

Rational UniPoly::operator()(const Rational& u) const
{
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * u + *it;
    return acc;
}

UniPoly& UniPoly::operator+=(const UniPoly& o)
{
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    trim();
    return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o)
{
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    trim();
    return *this;
}

UniPoly& UniPoly::operator*=(const Rational& c)
{
    if (c == 0) {
        coeffs_.clear();
        return *this;
    }
    for (auto& q : coeffs_) q *= c;
    return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b)
{
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return UniPoly(std::move(out));
}

UniPoly UniPoly::compose(const UniPoly& inner) const
{
    UniPoly acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * inner + constant(*it);
    return acc;
}

std::vector<Rational> to_binomial_basis(const UniPoly& p)
{
    const Degree d = p.degree();
    if (!d) return {};
    // b_k is the k-th forward difference at 0.
    std::vector<Rational> values(*d + 1);
    for (std::size_t u = 0; u <= *d; ++u) values[u] = p(Rational(static_cast<long>(u)));
    std::vector<Rational> b(*d + 1);
    for (std::size_t k = 0; k <= *d; ++k) {
        b[k] = values[0];
        for (std::size_t u = 0; u + 1 < values.size() - k; ++u) values[u] = values[u + 1] - values[u];
    }
    return b;
}

UniPoly discrete_derivative(const UniPoly& p) { return shift(p, 1) - p; }

bool is_integer_valued(const UniPoly& p)
{
    const auto b = to_binomial_basis(p);
    return std::all_of(b.begin(), b.end(), [](const Rational& q) { return is_integer(q); });
}

bool is_integral(const UniPoly& p) { return p.coeff(0) == 0 && is_integer_valued(p); }

UniPoly shift(const UniPoly& p, const Rational& c) { return p.compose(UniPoly({c, Rational(1)})); }

UniPoly substitute_affine(const UniPoly& p, long r, long j)
{
    if (r == 0) throw std::invalid_argument("substitute_affine: r must be nonzero");
    const UniPoly inner({Rational(j - r), Rational(r)});  // r(y-1)+j
    UniPoly out = p.compose(inner) - UniPoly::constant(p(Rational(j)));
    out *= Rational(1, 1) / Rational(r);
    return out;
}

Integer common_denominator(const UniPoly& p) { return common_denominator(std::span(p.coefficients())); }

namespace {

void append_term(std::string& out, const Rational& c, const std::string& atom)
{
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (out.empty()) {
        if (negative) out += '-';
    } else {
        out += negative ? '-' : '+';
    }
    if (atom.empty()) {
        out += to_string(mag);
        return;
    }
    if (mag.get_num() != 1) out += to_string(mag.get_num());
    out += atom;
    if (mag.get_den() != 1) out += "/" + to_string(mag.get_den());
}

}  // namespace

std::string render(const UniPoly& p, char var)
{
    if (p.is_zero()) return "0";
    const auto& c = p.coefficients();
    const bool integer_coeffs = std::all_of(c.begin(), c.end(), [](const Rational& q) { return is_integer(q); });
    std::string out;
    const std::string v(1, var);
    if (integer_coeffs) {
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (c[k] == 0) continue;
            std::string atom = k == 0 ? "" : (k == 1 ? v : v + "^" + std::to_string(k));
            append_term(out, c[k], atom);
        }
        return out;
    }
    const auto b = to_binomial_basis(p);
    for (std::size_t k = 0; k < b.size(); ++k) {
        if (b[k] == 0) continue;
        std::string atom = k == 0 ? "" : (k == 1 ? v : "C(" + v + "," + std::to_string(k) + ")");
        append_term(out, b[k], atom);
    }
    return out;
}

}  // namespace polyprog
