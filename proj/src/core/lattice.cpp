#include "polyprog/core/lattice.hpp"

#include <stdexcept>

namespace polyprog {

namespace {

// Integer row echelon form by Euclidean row operations on the first `pivot_cols` columns.
// Every operation is unimodular, so the rows keep generating the same lattice. Returns the rank.
std::size_t integer_echelon(IntegerMatrix& m, std::size_t pivot_cols, std::vector<std::size_t>* pivots = nullptr)
{
    std::size_t row = 0;
    for (std::size_t col = 0; col < pivot_cols && row < m.size(); ++col) {
        while (true) {
            // Smallest nonzero entry at or below `row` becomes the candidate pivot.
            std::size_t best = m.size();
            for (std::size_t r = row; r < m.size(); ++r)
                if (m[r][col] != 0 && (best == m.size() || abs(m[r][col]) < abs(m[best][col]))) best = r;
            if (best == m.size()) break;
            std::swap(m[row], m[best]);
            bool clean = true;
            for (std::size_t r = row + 1; r < m.size(); ++r) {
                if (m[r][col] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), m[r][col].get_mpz_t(), m[row][col].get_mpz_t());
                for (std::size_t c = 0; c < m[r].size(); ++c) m[r][c] -= q * m[row][c];
                if (m[r][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (m[row][col] == 0) continue;
        if (m[row][col] < 0)
            for (auto& z : m[row]) z = -z;
        if (pivots) pivots->push_back(col);
        ++row;
    }
    return row;
}

IntegerMatrix identity(std::size_t n)
{
    IntegerMatrix id(n, IntegerVector(n, 0));
    for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
    return id;
}

}  // namespace

IntegerMatrix hermite_normal_form(const IntegerMatrix& rows, std::size_t cols)
{
    IntegerMatrix m = rows;
    std::vector<std::size_t> pivots;
    const std::size_t r = integer_echelon(m, cols, &pivots);
    m.resize(r);
    for (std::size_t i = 0; i < r; ++i) {
        const std::size_t col = pivots[i];
        for (std::size_t above = 0; above < i; ++above) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), m[above][col].get_mpz_t(), m[i][col].get_mpz_t());
            if (q == 0) continue;
            for (std::size_t c = 0; c < cols; ++c) m[above][c] -= q * m[i][c];
        }
    }
    return m;
}

IntegerMatrix integer_kernel(const IntegerMatrix& a, std::size_t cols)
{
    const std::size_t m = a.size();
    // Rows of [a^T | I]; reducing the left block leaves kernel vectors on the right.
    IntegerMatrix aug(cols, IntegerVector(m + cols, 0));
    for (std::size_t j = 0; j < cols; ++j) {
        for (std::size_t i = 0; i < m; ++i) aug[j][i] = a[i][j];
        aug[j][m + j] = 1;
    }
    const std::size_t r = integer_echelon(aug, m);
    IntegerMatrix k;
    for (std::size_t j = r; j < cols; ++j) k.emplace_back(aug[j].begin() + static_cast<long>(m), aug[j].end());
    return hermite_normal_form(k, cols);
}

IntegerMatrix saturation(const IntegerMatrix& rows, std::size_t cols)
{
    const IntegerMatrix k = integer_kernel(rows, cols);
    if (k.empty()) return identity(cols);
    return integer_kernel(k, cols);
}

UnimodularCompletion complete_unimodular(const IntegerMatrix& rows, std::size_t cols)
{
    const std::size_t k = rows.size();
    IntegerMatrix aug(cols, IntegerVector(k + cols, 0));
    for (std::size_t j = 0; j < cols; ++j) {
        for (std::size_t i = 0; i < k; ++i) aug[j][i] = rows[i][j];
        aug[j][k + j] = 1;
    }
    const std::size_t r = integer_echelon(aug, k);
    if (r != k) throw std::invalid_argument("complete_unimodular: rows are linearly dependent");
    Integer det = 1;
    for (std::size_t i = 0; i < k; ++i) det *= aug[i][i];
    if (abs(det) != 1) throw std::invalid_argument("complete_unimodular: lattice is not saturated");

    // aug right block is V with V rows^T = E; the completion rows are columns k.. of V^{-1}.
    RationalMatrix v(cols, RationalVector(cols));
    for (std::size_t i = 0; i < cols; ++i)
        for (std::size_t j = 0; j < cols; ++j) v[i][j] = aug[i][k + j];
    RationalMatrix inv_aug(cols, RationalVector(2 * cols));
    for (std::size_t i = 0; i < cols; ++i) {
        for (std::size_t j = 0; j < cols; ++j) inv_aug[i][j] = v[i][j];
        inv_aug[i][cols + i] = 1;
    }
    const RowEchelon e = rref(inv_aug, 2 * cols);

    UnimodularCompletion out;
    out.basis = rows;
    for (std::size_t j = k; j < cols; ++j) {
        IntegerVector col(cols);
        for (std::size_t i = 0; i < cols; ++i) col[i] = e.rows[i][cols + j].get_num();
        out.basis.push_back(std::move(col));
    }

    // dual = (basis^{-1})^T.
    RationalMatrix b_aug(cols, RationalVector(2 * cols));
    for (std::size_t i = 0; i < cols; ++i) {
        for (std::size_t j = 0; j < cols; ++j) b_aug[i][j] = out.basis[i][j];
        b_aug[i][cols + i] = 1;
    }
    const RowEchelon be = rref(b_aug, 2 * cols);
    out.dual.assign(cols, IntegerVector(cols));
    for (std::size_t i = 0; i < cols; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            const Rational& q = be.rows[i][cols + j];
            if (!is_integer(q)) throw std::logic_error("complete_unimodular: completion is not unimodular");
            out.dual[j][i] = q.get_num();
        }
    return out;
}

bool same_lattice(const IntegerMatrix& a, const IntegerMatrix& b, std::size_t cols)
{
    return hermite_normal_form(a, cols) == hermite_normal_form(b, cols);
}

}  // namespace polyprog
