#include "polyprog/progression/progression.hpp"

#include <algorithm>
#include <stdexcept>

namespace polyprog {

namespace {

void check_shape(const std::vector<UniPoly>& polys)
{
    if (polys.empty()) throw std::invalid_argument("progression needs at least one nonzero polynomial");
    for (std::size_t i = 0; i < polys.size(); ++i) {
        if (polys[i].is_zero()) throw std::invalid_argument("P_" + std::to_string(i + 1) + " is zero");
        if (polys[i].coeff(0) != 0)
            throw std::invalid_argument("P_" + std::to_string(i + 1) + " has a nonzero constant term");
        for (std::size_t j = 0; j < i; ++j)
            if (polys[i] == polys[j])
                throw std::invalid_argument("P_" + std::to_string(j + 1) + " and P_" + std::to_string(i + 1) +
                                            " coincide");
    }
}

}  // namespace

Progression::Progression(std::vector<UniPoly> polys) : polys_(std::move(polys))
{
    check_shape(polys_);
    for (std::size_t i = 0; i < polys_.size(); ++i)
        if (!is_integral(polys_[i]))
            throw std::invalid_argument("P_" + std::to_string(i + 1) + " = " + render(polys_[i]) +
                                        " is not integral");
}

Progression Progression::general(std::vector<UniPoly> polys)
{
    check_shape(polys);
    Progression p;
    p.polys_ = std::move(polys);
    return p;
}

UniPoly Progression::poly(std::size_t i) const
{
    if (i == 0) return {};
    return polys_.at(i - 1);
}

std::size_t Progression::max_degree() const
{
    std::size_t d = 0;
    for (const auto& p : polys_) d = std::max(d, p.degree().value_or(0));
    return d;
}

std::string Progression::to_string() const
{
    std::string out = "x";
    for (const auto& p : polys_) {
        const std::string body = render(p, 'y');
        out += ", x";
        if (body.front() != '-') out += '+';
        out += body;
    }
    return out;
}

std::vector<Degree> Relation::degree_profile() const
{
    std::vector<Degree> d;
    d.reserve(qs.size());
    for (const auto& q : qs) d.push_back(q.degree());
    return d;
}

Degree Relation::degree() const
{
    Degree best;
    for (const auto& q : qs) {
        const Degree d = q.degree();
        if (d && (!best || *d > *best)) best = d;
    }
    return best;
}

BiPoly Relation::expand(const Progression& prog) const
{
    if (qs.size() != prog.t() + 1) throw std::invalid_argument("relation length does not match progression");
    BiPoly acc;
    for (std::size_t i = 0; i < qs.size(); ++i) acc += compose_shifted(qs[i], prog.poly(i));
    return acc;
}

bool Relation::is_zero() const
{
    return std::all_of(qs.begin(), qs.end(), [](const UniPoly& q) { return q.is_zero(); });
}

RationalVector Relation::coefficient_vector(std::size_t cap) const
{
    const std::size_t t = qs.size() - 1;
    RationalVector b((t + 1) * cap);
    for (std::size_t i = 0; i <= t; ++i) {
        const auto bi = to_binomial_basis(qs[i]);
        if (!bi.empty() && bi[0] != 0) throw std::invalid_argument("relation component has a constant term");
        if (bi.size() > cap + 1) throw std::invalid_argument("relation degree exceeds cap");
        for (std::size_t k = 1; k < bi.size(); ++k) b[relation_column(i, k, t)] = bi[k];
    }
    return b;
}

Relation Relation::from_coefficients(const RationalVector& b, std::size_t t, std::size_t cap)
{
    Relation r;
    for (std::size_t i = 0; i <= t; ++i) {
        std::vector<Rational> bi(cap + 1);
        for (std::size_t k = 1; k <= cap; ++k) bi[k] = b[relation_column(i, k, t)];
        r.qs.push_back(UniPoly::from_binomial_basis(bi));
    }
    return r;
}

std::string Relation::to_string() const
{
    std::string out = "(";
    for (std::size_t i = 0; i < qs.size(); ++i) {
        if (i) out += ", ";
        out += render(qs[i], 'u');
    }
    return out + ")";
}

std::size_t default_cap(const Progression& prog)
{
    const std::size_t t = prog.t();
    return std::max(t > 0 ? t - 1 : 0, prog.max_degree() + t);
}

RationalMatrix relation_matrix(const Progression& prog, std::size_t cap)
{
    const std::size_t t = prog.t();
    std::vector<BinomialShiftTable> tables;
    for (std::size_t i = 0; i <= t; ++i) tables.emplace_back(prog.poly(i));
    MonomialIndex index;
    for (std::size_t k = 1; k <= cap; ++k)
        for (std::size_t i = 0; i <= t; ++i) index.add(tables[i](static_cast<unsigned>(k)));
    RationalMatrix columns((t + 1) * cap);
    for (std::size_t k = 1; k <= cap; ++k)
        for (std::size_t i = 0; i <= t; ++i)
            columns[relation_column(i, k, t)] = index.coordinates(tables[i](static_cast<unsigned>(k)));
    return transpose(columns, index.size());
}

IntegerMatrix homogeneous_relations(const Progression& prog, std::size_t k)
{
    if (k == 0) throw std::invalid_argument("homogeneous_relations: degree must be positive");
    const std::size_t t = prog.t();
    const UniPoly power = UniPoly::monomial(k);
    std::vector<BiPoly> expanded;
    MonomialIndex index;
    for (std::size_t i = 0; i <= t; ++i) {
        expanded.push_back(compose_shifted(power, prog.poly(i)));
        index.add(expanded.back());
    }
    RationalMatrix columns;
    for (const auto& e : expanded) columns.push_back(index.coordinates(e));
    return kernel(transpose(columns, index.size()), t + 1);
}

namespace {

IntegerMatrix relation_kernel(const Progression& prog, std::size_t cap)
{
    return kernel(relation_matrix(prog, cap), (prog.t() + 1) * cap);
}

std::vector<std::size_t> complexities(const IntegerMatrix& k, std::size_t t, std::size_t cap)
{
    std::vector<std::size_t> s(t + 1, 0);
    for (const auto& v : k)
        for (std::size_t kk = 1; kk <= cap; ++kk)
            for (std::size_t i = 0; i <= t; ++i)
                if (v[relation_column(i, kk, t)] != 0) s[i] = std::max(s[i], kk);
    return s;
}

}  // namespace

RelationSpace relation_space(const Progression& prog, std::size_t cap)
{
    if (cap < 1) throw std::invalid_argument("relation_space: cap must be at least 1");
    const std::size_t t = prog.t();
    const IntegerMatrix k = relation_kernel(prog, cap);
    RelationSpace rs;
    rs.degree_cap = cap;
    for (const auto& v : k) {
        Relation r = Relation::from_coefficients(to_rational(std::span<const Integer>(v)), t, cap);
        if (!r.holds(prog)) throw std::logic_error("relation_space produced a non-relation " + r.to_string());
        rs.basis.push_back(std::move(r));
    }
    rs.stabilized = relation_kernel(prog, cap + 1).size() == k.size();
    return rs;
}

ComplexityResult algebraic_complexity(const Progression& prog, std::size_t cap)
{
    if (cap < 1) throw std::invalid_argument("algebraic_complexity: cap must be at least 1");
    const std::size_t t = prog.t();
    ComplexityResult out;
    out.cap = cap;
    out.values = complexities(relation_kernel(prog, cap), t, cap);
    out.stabilized = complexities(relation_kernel(prog, cap + 1), t, cap + 1) == out.values;
    return out;
}

std::pair<std::size_t, bool> algebraic_complexity(const Progression& prog, std::size_t i, std::size_t cap)
{
    if (i > prog.t()) throw std::out_of_range("algebraic_complexity: index out of range");
    const auto all = algebraic_complexity(prog, cap);
    return {all.values[i], all.stabilized};
}

}  // namespace polyprog
