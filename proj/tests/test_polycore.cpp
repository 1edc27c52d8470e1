#include <doctest.h>

#include "polyprog/core/bipoly.hpp"
#include "polyprog/core/lattice.hpp"
#include "polyprog/core/matrix.hpp"
#include "polyprog/core/unipoly.hpp"

#include <random>

using namespace polyprog;

namespace {

UniPoly poly(std::initializer_list<long> c)
{
    std::vector<Rational> v;
    for (long x : c) v.emplace_back(x);
    return UniPoly(v);
}

RationalVector rv(std::initializer_list<long> c)
{
    RationalVector v;
    for (long x : c) v.emplace_back(x);
    return v;
}

// Textbook C(n,k) by the product formula, independent of GMP's mpz_bin_ui.
Rational naive_binomial(long n, unsigned k)
{
    Rational acc = 1;
    for (unsigned i = 0; i < k; ++i) acc = acc * Rational(n - static_cast<long>(i)) / Rational(i + 1);
    return acc;
}

}  // namespace

TEST_CASE("binomial basis of u^2 and C(u,3)")
{
    CHECK(to_binomial_basis(poly({0, 0, 1})) == rv({0, 1, 2}));
    const UniPoly c3({Rational(0), Rational(1, 3), Rational(-1, 2), Rational(1, 6)});
    CHECK(UniPoly::binomial(3) == c3);
    CHECK(to_binomial_basis(c3) == rv({0, 0, 0, 1}));
    CHECK(to_binomial_basis(UniPoly()).empty());
    CHECK_FALSE(UniPoly().degree().has_value());
    CHECK(UniPoly::constant(0).is_zero());
    CHECK(*poly({0, 0, 1}).degree() == 2);
}

TEST_CASE("discrete derivative")
{
    for (std::size_t k = 1; k <= 6; ++k) CHECK(discrete_derivative(UniPoly::binomial(k)) == UniPoly::binomial(k - 1));
    CHECK(discrete_derivative(poly({0, 0, 1})) == poly({1, 2}));
    CHECK(discrete_derivative(UniPoly::constant(7)).is_zero());
    for (std::size_t k = 0; k <= 5; ++k) {
        UniPoly p = UniPoly::binomial(k);
        for (std::size_t i = 0; i < k; ++i) p = discrete_derivative(p);
        CHECK(p == UniPoly::constant(1));
    }
}

TEST_CASE("integrality")
{
    CHECK(is_integral(UniPoly::binomial(2)));
    CHECK_FALSE(is_integral(UniPoly({Rational(0), Rational(0), Rational(1, 2)})));
    CHECK(is_integral(poly({0, 0, 0, 1})));
    CHECK_FALSE(is_integral(poly({1, 1})));
    CHECK(is_integer_valued(poly({1, 1})));
    // Integrality survives the discrete derivative after removing the constant term.
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> coef(-5, 5);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Rational> b{Rational(0)};
        for (int k = 0; k < 4; ++k) b.emplace_back(coef(rng));
        const UniPoly p = UniPoly::from_binomial_basis(b);
        REQUIRE(is_integral(p));
        const UniPoly d = discrete_derivative(p);
        CHECK(is_integral(d - UniPoly::constant(d(0))));
    }
}

TEST_CASE("substitute_affine")
{
    CHECK(substitute_affine(poly({0, 1}), 2, 1) == poly({-1, 1}));
    CHECK(substitute_affine(poly({0, 0, 1}), 2, 0) == poly({2, -4, 2}));
    CHECK(substitute_affine(poly({0, 0, 0, 1}), 1, 0) == poly({-1, 3, -3, 1}));
    CHECK_THROWS_AS(substitute_affine(poly({0, 1}), 0, 0), std::invalid_argument);
}

TEST_CASE("monomial and binomial views agree on random integer points")
{
    std::mt19937 rng(2024);
    std::uniform_int_distribution<long> coef(-9, 9);
    std::uniform_int_distribution<long> point(-1000, 1000);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Rational> c;
        for (int k = 0; k <= 5; ++k) c.emplace_back(coef(rng));
        const UniPoly p(c);
        const auto b = to_binomial_basis(p);
        CHECK(UniPoly::from_binomial_basis(b) == p);
        CHECK(to_binomial_basis(UniPoly::from_binomial_basis(b)) == b);
        for (int i = 0; i < 100; ++i) {
            const long u = point(rng);
            Rational via_binomial = 0;
            for (std::size_t k = 0; k < b.size(); ++k) via_binomial += b[k] * naive_binomial(u, static_cast<unsigned>(k));
            CHECK(p(Rational(u)) == via_binomial);
        }
    }
}

TEST_CASE("rendering")
{
    CHECK(render(poly({0, 2, 0, -1})) == "2y-y^3");
    CHECK(render(UniPoly::binomial(2)) == "C(y,2)");
    CHECK(render(UniPoly::binomial(2) + poly({0, 1})) == "y+C(y,2)");
    CHECK(render(UniPoly()) == "0");
    const BiPoly xy_c = BiPoly::monomial(1, 1) + BiPoly::in_y(UniPoly::binomial(2));
    CHECK(render(xy_c) == "xy+C(y,2)");
    CHECK(render(BiPoly::monomial(1, 0) + BiPoly::monomial(0, 3)) == "x+y^3");
}

TEST_CASE("bivariate partial derivative")
{
    CHECK(partial_discrete_derivative_x(BiPoly::monomial(1, 1)) == BiPoly::monomial(0, 1));
    CHECK(partial_discrete_derivative_x(BiPoly::in_x(UniPoly::binomial(2))) == BiPoly::monomial(1, 0));
    const BiPoly r = BiPoly::monomial(2, 1) + BiPoly::monomial(0, 3);
    CHECK(partial_discrete_derivative_x(r) == BiPoly::monomial(1, 1, 2) + BiPoly::monomial(0, 1));
    const UniPoly p = poly({0, 3, 0, 1});
    BinomialShiftTable table(p);
    for (unsigned k = 1; k <= 5; ++k) CHECK(partial_discrete_derivative_x(table(k)) == table(k - 1));
}

TEST_CASE("bivariate binomial view round trip and shifted binomials")
{
    const UniPoly p = poly({0, 2, 1});
    BinomialShiftTable table(p);
    for (unsigned k = 0; k <= 4; ++k) {
        const BiPoly& c = table(k);
        CHECK(BiPoly::from_binomial_view(to_binomial_view(c)) == c);
        for (long x = -3; x <= 3; ++x)
            for (long y = -3; y <= 3; ++y) {
                const long u = x + 2 * y + y * y;
                CHECK(c(Rational(x), Rational(y)) == naive_binomial(u, k));
            }
    }
    const UniPoly q = poly({1, -2, 0, 3});
    const BiPoly qs = compose_shifted(q, p);
    for (long x = -2; x <= 2; ++x)
        for (long y = -2; y <= 2; ++y) CHECK(qs(Rational(x), Rational(y)) == q(Rational(x + 2 * y + y * y)));
}

TEST_CASE("kernel and subspace operations")
{
    RationalMatrix a{rv({1, 1, 1, 1}), rv({0, 1, 2, 0})};
    const auto k = kernel(a, 4);
    CHECK(k.size() == 2);
    for (const auto& v : k) CHECK(mat_vec(a, to_rational(std::span<const Integer>(v))) == rv({0, 0}));
    CHECK(rank(a, 4) == 2);

    RationalMatrix u{rv({1, 0, 0}), rv({0, 1, 0})};
    RationalMatrix w{rv({0, 1, 0}), rv({0, 0, 1})};
    const auto inter = subspace_intersection(u, w, 3);
    REQUIRE(inter.size() == 1);
    CHECK(inter[0] == rv({0, 1, 0}));
    CHECK(subspace_sum(u, w, 3).size() == 3);
    CHECK(in_span(u, rv({3, -2, 0}), 3));
    CHECK_FALSE(in_span(u, rv({0, 0, 1}), 3));
    CHECK(coordinates(u, rv({3, -2, 0}), 3) == rv({3, -2}));
    CHECK_THROWS_AS(coordinates(u, rv({0, 0, 1}), 3), std::domain_error);
    CHECK(complete_basis(u, w, 3).size() == 1);
}

TEST_CASE("kernel matches a brute-force rational oracle on random matrices")
{
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> e(-3, 3);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t rows = 1 + trial % 4, cols = 2 + trial % 5;
        RationalMatrix a(rows, RationalVector(cols));
        for (auto& r : a)
            for (auto& x : r) x = e(rng);
        const auto k = kernel(a, cols);
        CHECK(k.size() + rank(a, cols) == cols);
        for (const auto& v : k) CHECK(is_zero(mat_vec(a, to_rational(std::span<const Integer>(v)))));
        CHECK(rank(to_rational(k), cols) == k.size());
    }
}

TEST_CASE("integer lattices")
{
    const IntegerMatrix a{{2, 4, 6}};
    const auto k = integer_kernel(a, 3);
    CHECK(k.size() == 2);
    CHECK(same_lattice(k, {{1, 1, -1}, {2, -1, 0}}, 3));
    CHECK(same_lattice(saturation({{2, 4, 6}}, 3), {{1, 2, 3}}, 3));
    CHECK(hermite_normal_form({{4, 6}, {6, 4}}, 2) == IntegerMatrix{{2, 8}, {0, 10}});

    const auto comp = complete_unimodular({{1, 2, 3}}, 3);
    REQUIRE(comp.basis.size() == 3);
    CHECK(comp.basis[0] == IntegerVector{1, 2, 3});
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            Integer dot = 0;
            for (std::size_t c = 0; c < 3; ++c) dot += comp.basis[i][c] * comp.dual[j][c];
            CHECK(dot == (i == j ? 1 : 0));
        }
    CHECK_THROWS_AS(complete_unimodular({{2, 4, 6}}, 3), std::invalid_argument);
}
