#include "polyprog/core/bipoly.hpp"

#include <algorithm>

namespace polyprog {

BiPoly::BiPoly(Terms terms) : terms_(std::move(terms))
{
    std::erase_if(terms_, [](const auto& kv) { return kv.second == 0; });
}

BiPoly BiPoly::constant(const Rational& c) { return monomial(0, 0, c); }

BiPoly BiPoly::monomial(unsigned a, unsigned b, const Rational& c)
{
    BiPoly r;
    r.add_term({a, b}, c);
    return r;
}

BiPoly BiPoly::in_x(const UniPoly& p)
{
    BiPoly r;
    const auto& c = p.coefficients();
    for (std::size_t k = 0; k < c.size(); ++k) r.add_term({static_cast<unsigned>(k), 0u}, c[k]);
    return r;
}

BiPoly BiPoly::in_y(const UniPoly& p)
{
    BiPoly r;
    const auto& c = p.coefficients();
    for (std::size_t k = 0; k < c.size(); ++k) r.add_term({0u, static_cast<unsigned>(k)}, c[k]);
    return r;
}

BiPoly BiPoly::from_binomial_view(const Terms& binomial_terms)
{
    BiPoly out;
    for (const auto& [e, c] : binomial_terms)
        out += in_x(UniPoly::binomial(e.first)) * in_y(UniPoly::binomial(e.second)) * c;
    return out;
}

void BiPoly::add_term(const Exponent& e, const Rational& c)
{
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Rational BiPoly::coeff(unsigned a, unsigned b) const
{
    auto it = terms_.find({a, b});
    return it == terms_.end() ? Rational(0) : it->second;
}

unsigned BiPoly::degree_x() const
{
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.first);
    return d;
}

unsigned BiPoly::degree_y() const
{
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.second);
    return d;
}

Rational BiPoly::operator()(const Rational& x, const Rational& y) const
{
    Rational acc = 0;
    for (const auto& [e, c] : terms_) {
        Rational term = c;
        for (unsigned i = 0; i < e.first; ++i) term *= x;
        for (unsigned i = 0; i < e.second; ++i) term *= y;
        acc += term;
    }
    return acc;
}

BiPoly& BiPoly::operator+=(const BiPoly& o)
{
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o)
{
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

BiPoly& BiPoly::operator*=(const Rational& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, q] : terms_) q *= c;
    return *this;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b)
{
    BiPoly out;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) out.add_term({ea.first + eb.first, ea.second + eb.second}, ca * cb);
    return out;
}

BiPoly::Terms to_binomial_view(const BiPoly& r)
{
    if (r.is_zero()) return {};
    const unsigned dx = r.degree_x();
    const unsigned dy = r.degree_y();
    // Two-dimensional forward differences at the origin.
    std::vector<std::vector<Rational>> grid(dx + 1, std::vector<Rational>(dy + 1));
    for (unsigned i = 0; i <= dx; ++i)
        for (unsigned j = 0; j <= dy; ++j) grid[i][j] = r(Rational(i), Rational(j));
    for (unsigned i = 0; i <= dx; ++i)
        for (unsigned k = 1; k <= dy; ++k)
            for (unsigned j = dy; j >= k; --j) grid[i][j] -= grid[i][j - 1];
    for (unsigned j = 0; j <= dy; ++j)
        for (unsigned k = 1; k <= dx; ++k)
            for (unsigned i = dx; i >= k; --i) grid[i][j] -= grid[i - 1][j];
    BiPoly::Terms out;
    for (unsigned i = 0; i <= dx; ++i)
        for (unsigned j = 0; j <= dy; ++j)
            if (grid[i][j] != 0) out.emplace(Exponent{i, j}, grid[i][j]);
    return out;
}

BiPoly partial_discrete_derivative_x(const BiPoly& r)
{
    // Expand (x+1)^a with integer binomials; drop the unshifted term.
    BiPoly out;
    for (const auto& [e, c] : r.terms())
        for (unsigned m = 0; m < e.first; ++m)
            out += BiPoly::monomial(m, e.second, c * Rational(binomial(Integer(e.first), m)));
    return out;
}

BiPoly compose_shifted(const UniPoly& q, const UniPoly& p)
{
    const BiPoly base = BiPoly::monomial(1, 0) + BiPoly::in_y(p);
    BiPoly acc;
    const auto& c = q.coefficients();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * base + BiPoly::constant(*it);
    return acc;
}

BinomialShiftTable::BinomialShiftTable(UniPoly p)
    : p_(std::move(p)), base_(BiPoly::monomial(1, 0) + BiPoly::in_y(p_)), table_{BiPoly::constant(1)}
{
}

const BiPoly& BinomialShiftTable::operator()(unsigned k)
{
    while (table_.size() <= k) {
        const auto j = static_cast<long>(table_.size());
        BiPoly next = table_.back() * (base_ - BiPoly::constant(j - 1));
        next *= Rational(1, j);
        table_.push_back(std::move(next));
    }
    return table_[k];
}

BiPoly binomial_shifted(const UniPoly& p, unsigned k)
{
    BinomialShiftTable t(p);
    return t(k);
}

void MonomialIndex::add(const BiPoly& r)
{
    for (const auto& [e, c] : r.terms())
        if (index_.try_emplace(e, exponents_.size()).second) exponents_.push_back(e);
}

RationalVector MonomialIndex::coordinates(const BiPoly& r) const
{
    RationalVector v(exponents_.size());
    for (const auto& [e, c] : r.terms()) v.at(index_.at(e)) = c;
    return v;
}

BiPoly MonomialIndex::polynomial(const RationalVector& v) const
{
    BiPoly::Terms t;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) t.emplace(exponents_[i], v[i]);
    return BiPoly(std::move(t));
}

namespace {

std::string power_atom(char v, unsigned k)
{
    if (k == 0) return "";
    if (k == 1) return std::string(1, v);
    return std::string(1, v) + "^" + std::to_string(k);
}

std::string binomial_atom(char v, unsigned k)
{
    if (k == 0) return "";
    if (k == 1) return std::string(1, v);
    return "C(" + std::string(1, v) + "," + std::to_string(k) + ")";
}

std::string render_terms(const BiPoly::Terms& terms, bool binomial_view)
{
    std::vector<std::pair<Exponent, Rational>> sorted(terms.begin(), terms.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& l, const auto& r) {
        const unsigned dl = l.first.first + l.first.second;
        const unsigned dr = r.first.first + r.first.second;
        if (dl != dr) return dl < dr;
        return l.first.first > r.first.first;
    });
    std::string out;
    for (const auto& [e, c] : sorted) {
        const std::string atom = binomial_view ? binomial_atom('x', e.first) + binomial_atom('y', e.second)
                                               : power_atom('x', e.first) + power_atom('y', e.second);
        const bool negative = c < 0;
        const Rational mag = negative ? Rational(-c) : c;
        if (out.empty()) {
            if (negative) out += '-';
        } else {
            out += negative ? '-' : '+';
        }
        if (atom.empty()) {
            out += to_string(mag);
        } else {
            if (mag.get_num() != 1) out += to_string(mag.get_num());
            out += atom;
            if (mag.get_den() != 1) out += "/" + to_string(mag.get_den());
        }
    }
    return out;
}

}  // namespace

std::string render(const BiPoly& r)
{
    if (r.is_zero()) return "0";
    const bool integer_coeffs =
        std::all_of(r.terms().begin(), r.terms().end(), [](const auto& kv) { return is_integer(kv.second); });
    const auto binomial_terms = to_binomial_view(r);
    const bool use_binomial = binomial_terms.size() < r.terms().size() ||
                              (binomial_terms.size() == r.terms().size() && !integer_coeffs);
    return use_binomial ? render_terms(binomial_terms, true) : render_terms(r.terms(), false);
}

}  // namespace polyprog
