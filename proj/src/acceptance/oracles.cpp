#include "polyprog/acceptance/oracles.hpp"

#include <algorithm>

namespace polyprog::oracle {

namespace {

// C(v, k) for an integer v, by the falling-factorial product.
Rational binom(const Rational& v, std::size_t k)
{
    Rational num = 1, den = 1;
    for (std::size_t j = 0; j < k; ++j) {
        num *= v - Rational(static_cast<long>(j));
        den *= Rational(static_cast<long>(j + 1));
    }
    return num / den;
}

// Reduced row echelon form by plain Gauss-Jordan; returns the pivot columns.
std::vector<std::size_t> gauss_jordan(RationalMatrix& m, std::size_t cols)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[r], m[p]);
        const Rational inv = Rational(1) / m[r][c];
        for (auto& e : m[r]) e *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0) continue;
            const Rational f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    m.resize(r);
    return pivots;
}

// One row per grid point; column (k-1)(t+1) + i holds C(x + P_i(y), k).
RationalMatrix grid_matrix(const Progression& prog, std::size_t cap)
{
    const std::size_t T = prog.t() + 1;
    const std::size_t deg = std::max<std::size_t>(1, prog.max_degree());
    RationalMatrix rows;
    for (std::size_t x = 0; x <= cap; ++x)
        for (std::size_t y = 0; y <= cap * deg; ++y) {
            RationalVector row(cap * T);
            for (std::size_t i = 0; i < T; ++i) {
                const Rational v = Rational(static_cast<long>(x)) + prog.poly(i)(Rational(static_cast<long>(y)));
                for (std::size_t k = 1; k <= cap; ++k) row[(k - 1) * T + i] = binom(v, k);
            }
            rows.push_back(std::move(row));
        }
    return rows;
}

}  // namespace

RationalMatrix dense_grid_relations(const Progression& prog, std::size_t cap)
{
    const std::size_t cols = cap * (prog.t() + 1);
    RationalMatrix rows = grid_matrix(prog, cap);
    const auto pivots = gauss_jordan(rows, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    RationalMatrix kernel;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        RationalVector v(cols);
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -rows[r][f];
        kernel.push_back(std::move(v));
    }
    return kernel;
}

bool vanishes_on_grid(const Progression& prog, std::size_t cap, const RationalVector& b)
{
    for (const auto& row : grid_matrix(prog, cap)) {
        if (row.size() != b.size()) return false;
        Rational acc = 0;
        for (std::size_t j = 0; j < b.size(); ++j) acc += row[j] * b[j];
        if (acc != 0) return false;
    }
    return true;
}

std::size_t rank(RationalMatrix m)
{
    const std::size_t cols = m.empty() ? 0 : m.front().size();
    return gauss_jordan(m, cols).size();
}

Rational relation_value(const Relation& rel, const Progression& prog, const Rational& x, const Rational& y)
{
    Rational total = 0;
    for (std::size_t i = 0; i < rel.qs.size(); ++i) total += rel.qs[i](x + prog.poly(i)(y));
    return total;
}

UniPoly random_integral_poly(std::mt19937_64& rng, std::size_t degree, long range)
{
    std::uniform_int_distribution<long> coef(-range, range);
    std::vector<Rational> b(degree + 1);
    for (std::size_t k = 1; k < degree; ++k) b[k] = coef(rng);
    long top = 0;
    while (top == 0) top = coef(rng);
    b[degree] = top;
    return UniPoly::from_binomial_basis(b);
}

Progression random_progression(std::mt19937_64& rng, std::size_t t, std::size_t max_degree, long range)
{
    std::uniform_int_distribution<std::size_t> deg(1, max_degree);
    std::vector<UniPoly> polys;
    while (polys.size() < t) {
        UniPoly p = random_integral_poly(rng, deg(rng), range);
        if (std::find(polys.begin(), polys.end(), p) == polys.end()) polys.push_back(std::move(p));
    }
    return Progression(std::move(polys));
}

Progression arithmetic_progression(std::size_t t)
{
    std::vector<UniPoly> polys;
    for (std::size_t i = 1; i <= t; ++i) polys.push_back(UniPoly::monomial(1, Rational(static_cast<long>(i))));
    return Progression(std::move(polys));
}

}  // namespace polyprog::oracle
