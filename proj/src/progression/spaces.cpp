#include "polyprog/progression/spaces.hpp"

#include <algorithm>
#include <stdexcept>

namespace polyprog {

namespace {

// Monomial order for the tau reduction: higher x exponent first, then higher y exponent.
bool monomial_greater(const Exponent& a, const Exponent& b)
{
    if (a.first != b.first) return a.first > b.first;
    return a.second > b.second;
}

Exponent leading_monomial(const BiPoly& r)
{
    Exponent best = r.terms().begin()->first;
    for (const auto& [e, c] : r.terms())
        if (monomial_greater(e, best)) best = e;
    return best;
}

BiPoly primitive(const BiPoly& r, const MonomialIndex& index)
{
    const auto v = primitive_integer_vector(index.coordinates(r));
    return index.polynomial(to_rational(std::span<const Integer>(v)));
}

std::vector<BiPoly> primitive_basis(const RationalMatrix& rows, const MonomialIndex& index)
{
    std::vector<BiPoly> out;
    for (const auto& r : rows) out.push_back(primitive(index.polynomial(r), index));
    return out;
}

struct Expansions {
    std::vector<BinomialShiftTable> tables;
    MonomialIndex index;

    Expansions(const Progression& prog, std::size_t cap)
    {
        for (std::size_t i = 0; i <= prog.t(); ++i) tables.emplace_back(prog.poly(i));
        for (std::size_t k = 1; k <= cap; ++k)
            for (auto& t : tables) index.add(t(static_cast<unsigned>(k)));
    }

    RationalMatrix generators(std::size_t k)
    {
        RationalMatrix g;
        for (auto& t : tables) g.push_back(index.coordinates(t(static_cast<unsigned>(k))));
        return g;
    }
};

// Columns of the t+1 generators: one vector in Q^{t+1} per monomial.
RationalMatrix coefficient_columns(const std::vector<BiPoly>& generators)
{
    MonomialIndex index;
    for (const auto& g : generators) index.add(g);
    RationalMatrix rows;
    for (const auto& g : generators) rows.push_back(index.coordinates(g));
    return transpose(rows, index.size());
}

}  // namespace

CoeffSpace coeff_space(const Progression& prog, std::size_t k)
{
    if (k == 0) throw std::invalid_argument("coeff_space: degree must be positive");
    const std::size_t n = prog.t() + 1;
    CoeffSpace out;
    out.k = k;

    struct Element {
        BiPoly q;
        Exponent pivot;
        RationalVector v;
    };
    std::vector<Element> elems;
    for (std::size_t i = 0; i < n; ++i) {
        BiPoly residual = binomial_shifted(prog.poly(i), static_cast<unsigned>(k));
        // Top reduction: cancel the leading monomial while it is the pivot of a known element.
        while (!residual.is_zero()) {
            const Exponent lead = leading_monomial(residual);
            auto it = std::find_if(elems.begin(), elems.end(), [&](const Element& e) { return e.pivot == lead; });
            if (it == elems.end()) break;
            const Rational f = residual.coeff(lead.first, lead.second) / it->q.coeff(lead.first, lead.second);
            residual -= it->q * f;
            it->v[i] += f;
        }
        if (!residual.is_zero()) {
            Element el{residual, leading_monomial(residual), RationalVector(n)};
            el.v[i] = 1;
            elems.push_back(std::move(el));
        }
    }
    for (auto& el : elems) {
        // Rescale the pair so that v is a primitive integer vector; its first nonzero entry is 1.
        const auto pv = primitive_integer_vector(el.v);
        std::size_t first = 0;
        while (el.v[first] == 0) ++first;
        const Rational scale = Rational(pv[first]) / el.v[first];
        out.tau.push_back({el.q * (1 / scale), to_rational(std::span<const Integer>(pv))});
        out.basis.push_back(out.tau.back().v);
    }

    // Compare the four descriptions of the coefficient space.
    std::vector<BiPoly> powers_k, binoms_k;
    RationalMatrix a2, a4;
    for (std::size_t j = 1; j <= k; ++j) {
        std::vector<BiPoly> pw, bn;
        for (std::size_t i = 0; i < n; ++i) {
            pw.push_back(compose_shifted(UniPoly::monomial(j), prog.poly(i)));
            bn.push_back(binomial_shifted(prog.poly(i), static_cast<unsigned>(j)));
        }
        const auto cp = coefficient_columns(pw);
        const auto cb = coefficient_columns(bn);
        a2.insert(a2.end(), cp.begin(), cp.end());
        a4.insert(a4.end(), cb.begin(), cb.end());
        if (j == k) {
            powers_k = pw;
            binoms_k = bn;
        }
    }
    const auto a1 = coefficient_columns(powers_k);
    const auto a3 = coefficient_columns(binoms_k);
    const std::size_t r = out.basis.size();
    out.definitions_agree = rank(a1, n) == r && rank(a2, n) == r && rank(a3, n) == r && rank(a4, n) == r &&
                            subspace_of(a1, out.basis, n) && subspace_of(a2, out.basis, n) &&
                            subspace_of(a3, out.basis, n) && subspace_of(a4, out.basis, n);
    return out;
}

GradedSpaces graded_spaces(const Progression& prog, std::size_t k_max, std::size_t cap)
{
    if (k_max < 1 || cap < k_max) throw std::invalid_argument("graded_spaces: need 1 <= k_max <= cap");
    Expansions ex(prog, cap);
    const std::size_t dim = ex.index.size();
    std::vector<RationalMatrix> gens(cap + 1);
    for (std::size_t k = 1; k <= cap; ++k) gens[k] = ex.generators(k);

    GradedSpaces out;
    out.cap = cap;
    RationalMatrix wc_all;
    for (std::size_t k = 1; k <= k_max; ++k) {
        GradedLevel level;
        level.k = k;
        for (auto& p : coeff_space(prog, k).tau) level.w.push_back(p.q);

        RationalMatrix others;
        for (std::size_t j = 1; j <= cap; ++j)
            if (j != k) others.insert(others.end(), gens[j].begin(), gens[j].end());
        const RationalMatrix wc = subspace_intersection(gens[k], others, dim);
        level.w_c = primitive_basis(wc, ex.index);
        wc_all.insert(wc_all.end(), wc.begin(), wc.end());

        RationalMatrix w_rows;
        for (const auto& q : level.w) w_rows.push_back(ex.index.coordinates(q));
        for (const auto& row : complete_basis(wc, w_rows, dim)) level.w_prime.push_back(ex.index.polynomial(row));
        out.levels.push_back(std::move(level));
    }
    out.w_c_total = primitive_basis(span_basis(wc_all, dim), ex.index);
    return out;
}

std::vector<BiPoly> complementary_space_from_relations(const Progression& prog, const RelationSpace& rs,
                                                       std::size_t k)
{
    const std::size_t t = prog.t();
    std::vector<BinomialShiftTable> tables;
    for (std::size_t i = 0; i <= t; ++i) tables.emplace_back(prog.poly(i));
    MonomialIndex index;
    std::vector<BiPoly> images;
    for (const auto& rel : rs.basis) {
        BiPoly img;
        for (std::size_t i = 0; i <= t; ++i) {
            const auto b = to_binomial_basis(rel.qs[i]);
            if (k < b.size() && b[k] != 0) img += tables[i](static_cast<unsigned>(k)) * b[k];
        }
        index.add(img);
        images.push_back(std::move(img));
    }
    RationalMatrix rows;
    for (const auto& img : images) rows.push_back(index.coordinates(img));
    return primitive_basis(span_basis(rows, index.size()), index);
}

HomogeneityResult is_homogeneous(const Progression& prog, std::size_t cap)
{
    const RelationSpace rs = relation_space(prog, cap);
    HomogeneityResult out;
    out.cap = cap;
    out.stabilized = rs.stabilized;
    const std::size_t t = prog.t();
    for (std::size_t k = 1; k <= cap && out.homogeneous; ++k) {
        // Smallest-degree relation whose degree-k block does not vanish.
        const Relation* best = nullptr;
        BiPoly best_image;
        for (const auto& rel : rs.basis) {
            BiPoly img;
            for (std::size_t i = 0; i <= t; ++i) {
                const auto b = to_binomial_basis(rel.qs[i]);
                if (k < b.size() && b[k] != 0) img += binomial_shifted(prog.poly(i), static_cast<unsigned>(k)) * b[k];
            }
            if (img.is_zero()) continue;
            if (!best || *rel.degree() < *best->degree()) {
                best = &rel;
                best_image = img;
            }
        }
        if (best) {
            MonomialIndex index;
            index.add(best_image);
            out.homogeneous = false;
            out.witness_degree = k;
            out.witness_polynomial = primitive(best_image, index);
            out.witness_relation = *best;
        }
    }
    return out;
}

std::size_t homogeneous_relation_dimension(const Progression& prog, std::size_t cap)
{
    std::size_t d = 0;
    for (std::size_t k = 1; k <= cap; ++k) d += homogeneous_relations(prog, k).size();
    return d;
}

VandermondeResult vandermonde_bound_check(const Progression& prog, std::optional<std::size_t> cap)
{
    const std::size_t c = cap.value_or(default_cap(prog));
    if (!is_homogeneous(prog, c).homogeneous)
        throw std::invalid_argument("vandermonde_bound_check: " + prog.to_string() + " is inhomogeneous");
    VandermondeResult out;
    out.bound = prog.t() - 1;
    const RelationSpace rs = relation_space(prog, c);
    for (const auto& rel : rs.basis) {
        const std::size_t d = *rel.degree();
        out.max_complexity = std::max(out.max_complexity, d);
        if (d > out.bound && !out.violation) out.violation = rel;
    }
    out.holds = out.max_complexity <= out.bound;
    return out;
}

Progression reparametrize(const Progression& prog, long r, long j)
{
    if (r < 1 || j < 0 || j >= r) throw std::invalid_argument("reparametrize: need r >= 1 and 0 <= j < r");
    std::vector<UniPoly> polys;
    for (const auto& p : prog.polys()) polys.push_back(shift(substitute_affine(p, r, j), 1));
    return Progression::general(std::move(polys));
}

EligibilityResult is_eligible(const Progression& prog, std::size_t r_max, std::optional<std::size_t> cap)
{
    if (r_max < 1) throw std::invalid_argument("is_eligible: r_max must be at least 1");
    const std::size_t c = cap.value_or(default_cap(prog));
    if (!is_homogeneous(prog, c).homogeneous)
        throw std::invalid_argument("is_eligible: " + prog.to_string() + " is inhomogeneous");
    const auto base = algebraic_complexity(prog, c).values;
    EligibilityResult out;
    out.r_max = r_max;
    for (long r = 1; r <= static_cast<long>(r_max); ++r)
        for (long j = 0; j < r; ++j) {
            const Progression sub = reparametrize(prog, r, j);
            if (!is_homogeneous(sub, c).homogeneous) {
                out.eligible = false;
                out.witness = std::make_pair(r, j);
                out.reason = "reparametrised family " + sub.to_string() + " is inhomogeneous";
                return out;
            }
            if (algebraic_complexity(sub, c).values != base) {
                out.eligible = false;
                out.witness = std::make_pair(r, j);
                out.reason = "complexities of " + sub.to_string() + " differ";
                return out;
            }
        }
    return out;
}

}  // namespace polyprog
