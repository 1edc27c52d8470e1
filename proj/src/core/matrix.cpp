#include "polyprog/core/matrix.hpp"

#include <stdexcept>

namespace polyprog {

RowEchelon rref(const RationalMatrix& a, std::size_t cols)
{
    RationalMatrix m = a;
    RowEchelon out;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t p = row;
        while (p < m.size() && m[p][col] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[row]);
        const Rational inv = 1 / m[row][col];
        for (std::size_t c = col; c < cols; ++c) m[row][c] *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col] == 0) continue;
            const Rational f = m[r][col];
            for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
        }
        out.pivots.push_back(col);
        ++row;
    }
    m.resize(row);
    out.rows = std::move(m);
    return out;
}

std::size_t rank(const RationalMatrix& a, std::size_t cols) { return rref(a, cols).pivots.size(); }

namespace {

void make_primitive(IntegerVector& v)
{
    const Integer g = content(v);
    if (g == 0 || g == 1) return;
    for (auto& z : v) z /= g;
}

}  // namespace

IntegerMatrix kernel(const RationalMatrix& a, std::size_t cols)
{
    IntegerMatrix m;
    m.reserve(a.size());
    for (const auto& r : a) {
        if (r.size() != cols) throw std::invalid_argument("kernel: row length mismatch");
        auto z = primitive_integer_vector(r);
        bool nonzero = false;
        for (const auto& e : z) nonzero = nonzero || e != 0;
        if (nonzero) m.push_back(std::move(z));
    }

    std::vector<bool> used(m.size(), false);
    std::vector<long> pivot_row(cols, -1);
    for (std::size_t col = cols; col-- > 0;) {
        std::size_t p = 0;
        while (p < m.size() && (used[p] || m[p][col] == 0)) ++p;
        if (p == m.size()) continue;
        used[p] = true;
        pivot_row[col] = static_cast<long>(p);
        const Integer pv = m[p][col];
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == p || m[r][col] == 0) continue;
            const Integer f = m[r][col];
            for (std::size_t c = 0; c < cols; ++c) m[r][c] = pv * m[r][c] - f * m[p][c];
            make_primitive(m[r]);
        }
    }

    IntegerMatrix basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (pivot_row[f] >= 0) continue;
        // Pivot rows are diagonal on pivot columns: row[p] v_p + row[f] = 0.
        RationalVector v(cols);
        v[f] = 1;
        for (std::size_t p = 0; p < cols; ++p) {
            if (pivot_row[p] < 0) continue;
            const auto& row = m[static_cast<std::size_t>(pivot_row[p])];
            v[p] = Rational(-row[f]) / Rational(row[p]);
        }
        basis.push_back(primitive_integer_vector(v));
        // primitive_integer_vector makes the first nonzero entry positive; restore the free entry sign.
        if (basis.back()[f] < 0)
            for (auto& z : basis.back()) z = -z;
    }
    return basis;
}

RationalMatrix span_basis(const RationalMatrix& vectors, std::size_t dim) { return rref(vectors, dim).rows; }

bool in_span(const RationalMatrix& basis, const RationalVector& v, std::size_t dim)
{
    RationalMatrix m = basis;
    const std::size_t r = rank(m, dim);
    m.push_back(v);
    return rank(m, dim) == r;
}

bool subspace_of(const RationalMatrix& sub, const RationalMatrix& whole, std::size_t dim)
{
    RationalMatrix m = whole;
    const std::size_t r = rank(m, dim);
    m.insert(m.end(), sub.begin(), sub.end());
    return rank(m, dim) == r;
}

RationalMatrix subspace_sum(const RationalMatrix& u, const RationalMatrix& v, std::size_t dim)
{
    RationalMatrix m = u;
    m.insert(m.end(), v.begin(), v.end());
    return span_basis(m, dim);
}

RationalMatrix subspace_intersection(const RationalMatrix& u, const RationalMatrix& v, std::size_t dim)
{
    const RationalMatrix bu = span_basis(u, dim);
    const RationalMatrix bv = span_basis(v, dim);
    if (bu.empty() || bv.empty()) return {};
    // Columns are the generators of u followed by the negated generators of v.
    const std::size_t n = bu.size() + bv.size();
    RationalMatrix m(dim, RationalVector(n));
    for (std::size_t i = 0; i < bu.size(); ++i)
        for (std::size_t d = 0; d < dim; ++d) m[d][i] = bu[i][d];
    for (std::size_t j = 0; j < bv.size(); ++j)
        for (std::size_t d = 0; d < dim; ++d) m[d][bu.size() + j] = -bv[j][d];
    RationalMatrix gens;
    for (const auto& k : kernel(m, n)) {
        RationalVector w(dim);
        for (std::size_t i = 0; i < bu.size(); ++i)
            for (std::size_t d = 0; d < dim; ++d) w[d] += Rational(k[i]) * bu[i][d];
        gens.push_back(std::move(w));
    }
    return span_basis(gens, dim);
}

RationalMatrix complete_basis(const RationalMatrix& sub, const RationalMatrix& candidates, std::size_t dim)
{
    RationalMatrix acc = span_basis(sub, dim);
    std::size_t r = acc.size();
    RationalMatrix added;
    for (const auto& c : candidates) {
        acc.push_back(c);
        const std::size_t nr = rank(acc, dim);
        if (nr > r) {
            r = nr;
            added.push_back(c);
        } else {
            acc.pop_back();
        }
    }
    return added;
}

RationalVector coordinates(const RationalMatrix& basis, const RationalVector& v, std::size_t dim)
{
    const std::size_t n = basis.size();
    RationalMatrix aug(dim, RationalVector(n + 1));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t d = 0; d < dim; ++d) aug[d][i] = basis[i][d];
    for (std::size_t d = 0; d < dim; ++d) aug[d][n] = v[d];
    const RowEchelon e = rref(aug, n + 1);
    if (!e.pivots.empty() && e.pivots.back() == n) throw std::domain_error("coordinates: vector not in span");
    if (e.pivots.size() != n) throw std::domain_error("coordinates: basis is linearly dependent");
    RationalVector c(n);
    for (std::size_t r = 0; r < e.rows.size(); ++r) c[e.pivots[r]] = e.rows[r][n];
    return c;
}

RationalMatrix transpose(const RationalMatrix& a, std::size_t cols)
{
    RationalMatrix t(cols, RationalVector(a.size()));
    for (std::size_t r = 0; r < a.size(); ++r)
        for (std::size_t c = 0; c < cols; ++c) t[c][r] = a[r][c];
    return t;
}

RationalVector mat_vec(const RationalMatrix& a, const RationalVector& v)
{
    RationalVector out(a.size());
    for (std::size_t r = 0; r < a.size(); ++r)
        for (std::size_t c = 0; c < v.size(); ++c) out[r] += a[r][c] * v[c];
    return out;
}

RationalMatrix to_rational(const IntegerMatrix& m)
{
    RationalMatrix out;
    out.reserve(m.size());
    for (const auto& r : m) out.push_back(polyprog::to_rational(std::span<const Integer>(r)));
    return out;
}

}  // namespace polyprog
