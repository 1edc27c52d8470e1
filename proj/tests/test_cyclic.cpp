#include <doctest.h>

#include "polyprog/cyclic/counting.hpp"
#include "polyprog/cyclic/gowers.hpp"

#include <cmath>
#include <random>

using namespace polyprog;

namespace {

UniPoly poly(std::initializer_list<long> c)
{
    std::vector<Rational> v;
    for (long x : c) v.emplace_back(x);
    return UniPoly(v);
}

const UniPoly Y = poly({0, 1});
const UniPoly Y2 = poly({0, 2});
const UniPoly YSQ = poly({0, 0, 1});
const UniPoly YCUBE = poly({0, 0, 0, 1});

Signal random_signal(std::size_t n, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> r(0.0, 1.0);
    std::vector<Complex> v(n);
    for (auto& z : v) z = std::polar(r(rng), 2.0 * M_PI * r(rng));
    return Signal(n, v);
}

// Direct sum over the 2^s-cube; only for tiny N.
double naive_gowers_power(const Signal& f, unsigned s)
{
    const std::size_t n = f.N;
    std::vector<std::size_t> h(s);
    Complex total = 0;
    std::size_t count = 1;
    for (unsigned j = 0; j < s; ++j) count *= n;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t code = 0; code < count; ++code) {
            std::size_t c = code;
            for (unsigned j = 0; j < s; ++j) {
                h[j] = c % n;
                c /= n;
            }
            Complex prod = 1;
            for (std::size_t w = 0; w < (std::size_t{1} << s); ++w) {
                std::size_t pt = x;
                unsigned weight = 0;
                for (unsigned j = 0; j < s; ++j)
                    if (w >> j & 1) {
                        pt += h[j];
                        ++weight;
                    }
                const Complex v = f[pt % n];
                prod *= (weight % 2) ? std::conj(v) : v;
            }
            total += prod;
        }
    return total.real() / static_cast<double>(n * count);
}

Subset even_residues(std::size_t n)
{
    Subset a = Subset::empty(n);
    for (std::size_t x = 0; x < n; x += 2) a.member[x] = true;
    return a;
}

const Progression EXAMPLE({YSQ, poly({0, 0, 2}), YCUBE, poly({0, 0, 0, 2})});

}  // namespace

TEST_CASE("gowers norms of simple signals")
{
    for (unsigned s = 1; s <= 3; ++s) CHECK(gowers_norm(Signal::constant(37, 1.0), s) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gowers_norm(Signal::character(101, 1), 2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gowers_norm(Signal::character(101, 1), 1) < 1e-12);

    const Signal q = Signal::quadratic_phase(101);
    CHECK(std::abs(gowers_norm(q, 2) - std::pow(101.0, -0.25)) < 1e-9);
    CHECK(std::abs(gowers_norm(q, 3) - 1.0) < 1e-9);
    CHECK_THROWS_AS(gowers_norm(q, 0), std::invalid_argument);
}

TEST_CASE("gowers norms agree with the direct cube sum")
{
    std::mt19937_64 rng(7);
    for (std::size_t n : {5u, 8u, 13u}) {
        const Signal f = random_signal(n, rng);
        for (unsigned s = 1; s <= 3; ++s) {
            const double expected = naive_gowers_power(f, s);
            CHECK(gowers_power(f, s, GowersMethod::recursion) == doctest::Approx(expected).epsilon(1e-10));
            CHECK(gowers_power(f, s, GowersMethod::fourier) == doctest::Approx(expected).epsilon(1e-10));
        }
    }
    CHECK(naive_gowers_power(Signal::quadratic_phase(13), 2) == doctest::Approx(1.0 / 13.0));
}

TEST_CASE("gowers norm properties on random signals")
{
    std::mt19937_64 rng(2024);
    for (std::size_t n : {64u, 101u, 257u}) {
        for (int k = 0; k < 20; ++k) {
            const Signal f = random_signal(n, rng);
            const double u1 = gowers_norm(f, 1), u2 = gowers_norm(f, 2), u3 = gowers_norm(f, 3);
            CHECK(u1 <= u2 + 1e-9);
            CHECK(u2 <= u3 + 1e-9);

            const double rec = gowers_power(f, 2, GowersMethod::recursion);
            CHECK(std::abs(rec - gowers_power(f, 2, GowersMethod::fourier)) <= 1e-9 * rec);

            std::vector<Complex> scaled = f.values, modulated = f.values, shifted(n);
            const Complex c(0.3, -0.4);
            for (std::size_t x = 0; x < n; ++x) {
                scaled[x] *= c;
                modulated[x] *= Signal::character(n, 5)[x];
                shifted[x] = f[(x + 17) % n];
            }
            CHECK(gowers_norm(Signal(n, scaled), 2) == doctest::Approx(std::abs(c) * u2).epsilon(1e-9));
            CHECK(gowers_norm(Signal(n, modulated), 2) == doctest::Approx(u2).epsilon(1e-9));
            for (unsigned s = 1; s <= 3; ++s)
                CHECK(gowers_norm(Signal(n, shifted), s) == doctest::Approx(gowers_norm(f, s)).epsilon(1e-9));
        }
    }
}

TEST_CASE("gowers norms do not depend on the thread count")
{
    std::mt19937_64 rng(3);
    const Signal f = random_signal(97, rng);
    CHECK(gowers_power(f, 3, GowersMethod::fourier, 1) == gowers_power(f, 3, GowersMethod::fourier, 4));
}

TEST_CASE("count operator")
{
    const Progression ap({Y, Y2});
    CHECK(std::abs(count_operator(std::vector<Signal>(3, Signal::constant(11, 1.0)), ap) - 1.0) < 1e-12);

    for (std::size_t n : {11u, 101u}) {
        const Subset a = even_residues(n);
        std::size_t hits = 0;
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                hits += a.contains(x) && a.contains((x + y) % n) && a.contains((x + 2 * y) % n);
        const Complex c = count_operator(std::vector<Signal>(3, a.indicator()), ap);
        CHECK(c.real() == doctest::Approx(static_cast<double>(hits) / static_cast<double>(n * n)).epsilon(1e-12));
        CHECK(std::abs(c.imag()) < 1e-15);
    }

    CHECK_THROWS_AS(count_operator({Signal::constant(5, 1.0), Signal::constant(7, 1.0), Signal::constant(5, 1.0)}, ap),
                    std::invalid_argument);
    CHECK_THROWS_AS(count_operator(std::vector<Signal>(2, Signal::constant(5, 1.0)), ap), std::invalid_argument);
}

TEST_CASE("count operator is multilinear and thread independent")
{
    std::mt19937_64 rng(11);
    const Progression p({Y, YSQ});
    const std::size_t n = 53;
    std::vector<Signal> f{random_signal(n, rng), random_signal(n, rng), random_signal(n, rng)};
    const Signal g = random_signal(n, rng);
    for (std::size_t slot = 0; slot < 3; ++slot) {
        auto fg = f, gg = f;
        gg[slot] = g;
        std::vector<Complex> sum(n);
        for (std::size_t x = 0; x < n; ++x) sum[x] = f[slot][x] + g[x];
        fg[slot] = Signal(n, sum);
        const Complex lhs = count_operator(fg, p);
        const Complex rhs = count_operator(f, p) + count_operator(gg, p);
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
    CHECK(std::abs(count_operator(f, p, 1) - count_operator(f, p, 3)) < 1e-12);
}

TEST_CASE("linear count operator")
{
    const IntegerMatrix forms{{0, 0}, {1, 0}, {0, 1}};
    CHECK(std::abs(linear_count_operator(std::vector<Signal>(3, Signal::constant(13, 1.0)), forms, 2) - 1.0) < 1e-12);

    const Subset a = Subset::random(31, 0.4, 5);
    const double alpha = a.density();
    const Complex c = linear_count_operator(std::vector<Signal>(3, a.indicator()), forms, 2);
    CHECK(c.real() == doctest::Approx(alpha * alpha * alpha).epsilon(1e-12));

    // (x, x+y, x+2y) through the one-variable linear model matches the polynomial count.
    const Progression ap({Y, Y2});
    const std::vector<Signal> f(3, a.indicator());
    CHECK(std::abs(linear_count_operator(f, IntegerMatrix{{0}, {1}, {2}}, 1) - count_operator(f, ap)) < 1e-12);

    CHECK_THROWS_AS(linear_count_operator(f, forms, 2, 1, 1000), BudgetExceeded);
    CHECK_THROWS_AS(linear_count_operator(f, forms, 0), std::invalid_argument);
}

TEST_CASE("linear models")
{
    const LinearModel m = linear_model(EXAMPLE);
    CHECK(m.basis_from_progression);
    REQUIRE(m.q.size() == 2);
    CHECK(m.q[0] == YSQ);
    CHECK(m.q[1] == YCUBE);
    CHECK(m.a == IntegerMatrix{{0, 0}, {1, 0}, {2, 0}, {0, 1}, {0, 2}});

    const LinearModel h = linear_model(Progression({Y2, poly({0, 3})}));
    CHECK_FALSE(h.basis_from_progression);
    REQUIRE(h.q.size() == 1);
    CHECK(h.q[0] == Y);
    CHECK(h.a == IntegerMatrix{{0}, {2}, {3}});

    // y^2 and y^2+y share the lattice with y, y^2 only through an integer change of basis.
    const LinearModel b = linear_model(Progression({YSQ, poly({0, 1, 1})}));
    for (std::size_t i = 1; i <= 2; ++i) {
        UniPoly rebuilt;
        for (std::size_t j = 0; j < b.q.size(); ++j) rebuilt += b.q[j] * Rational(b.a[i][j]);
        CHECK(rebuilt == (i == 1 ? YSQ : poly({0, 1, 1})));
    }
}

TEST_CASE("polynomial against linear counts")
{
    const CountReport full = compare_poly_vs_linear(Subset::full(101), EXAMPLE);
    CHECK(full.difference < 1e-12);
    CHECK(std::abs(full.poly_count - 1.0) < 1e-12);

    const CountReport none = compare_poly_vs_linear(Subset::empty(101), EXAMPLE);
    CHECK(std::abs(none.poly_count) == 0.0);
    CHECK(std::abs(none.linear_count) == 0.0);

    const CountReport r = compare_poly_vs_linear(Subset::random(101, 0.5, 1), EXAMPLE);
    CHECK(r.difference == doctest::Approx(std::abs(r.poly_count - r.linear_count)));
    CHECK(r.difference < 0.05);

    CHECK_THROWS_AS(compare_poly_vs_linear(Subset::full(100), EXAMPLE), std::invalid_argument);
    try {
        compare_poly_vs_linear(Subset::full(101), Progression({Y, Y2, YSQ}));
        FAIL("expected rejection");
    } catch (const ComplexityTooHigh& e) {
        CHECK(e.relation.holds(Progression({Y, Y2, YSQ})));
        CHECK(*e.relation.degree() >= 2);
    }
}

TEST_CASE("popular differences")
{
    const PopDiffReport full = popular_differences(Subset::full(31), EXAMPLE, 0.01);
    CHECK(full.qualifying.size() == 31);
    CHECK(full.fraction == 1.0);

    const Subset a = Subset::random(101, 0.5, 9);
    const PopDiffReport r = popular_differences(a, EXAMPLE, 0.02, 3);
    REQUIRE_FALSE(r.qualifying.empty());
    CHECK(r.qualifying.front() == 0);

    // Independent recount with explicit modular arithmetic.
    std::vector<std::size_t> expected;
    const double alpha = static_cast<double>(a.size()) / 101.0;
    const double bound = (std::pow(alpha, 5) - 0.02) * 101.0;
    for (long n = 0; n < 101; ++n) {
        const long shifts[] = {n * n, 2 * n * n, n * n * n, 2 * n * n * n};
        std::size_t count = 0;
        for (long x = 0; x < 101; ++x) {
            bool in = a.contains(static_cast<std::size_t>(x));
            for (long s : shifts) in = in && a.contains(static_cast<std::size_t>(((x - s) % 101 + 101) % 101));
            count += in;
        }
        if (static_cast<double>(count) > bound) expected.push_back(static_cast<std::size_t>(n));
    }
    CHECK(r.qualifying == expected);
    CHECK(popular_differences(a, EXAMPLE, 0.02, 1).qualifying == expected);
}

TEST_CASE("obstruction signals")
{
    const Progression p({Y, Y2, YSQ});
    const Relation rel{{poly({0, 2, 1}), poly({0, 0, -2}), YSQ, poly({0, -2})}};
    const std::size_t n = 101;
    const auto f = build_obstruction(p, rel, n);
    CHECK(std::abs(count_operator(f, p) - 1.0) < 1e-9);
    CHECK(gowers_norm(f[0], 2) == doctest::Approx(std::pow(101.0, -0.25)).epsilon(1e-9));
    CHECK(gowers_norm(f[0], 3) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(f[0].mean()) <= 0.2);

    std::mt19937_64 rng(42);
    for (int k = 0; k < 1000; ++k) {
        const std::size_t x = rng() % n, y = rng() % n;
        Complex prod = 1;
        for (std::size_t i = 0; i <= p.t(); ++i) {
            const long pi = static_cast<long>(p.poly(i)(Rational(static_cast<unsigned long>(y))).get_num().get_si());
            prod *= f[i][static_cast<std::size_t>((static_cast<long>(x) + pi) % static_cast<long>(n))];
        }
        CHECK(std::abs(prod - 1.0) < 1e-12);
    }

    const auto ones = build_obstruction(p, Relation{std::vector<UniPoly>(4)}, n);
    for (const auto& s : ones) CHECK(std::abs(s.mean() - 1.0) < 1e-15);

    const Progression ap({Y, Y2});
    const auto lin = build_obstruction(ap, Relation{{Y, poly({0, -2}), Y}}, n);
    CHECK(std::abs(count_operator(lin, ap) - 1.0) < 1e-9);
    for (const auto& s : lin) CHECK(gowers_norm(s, 2) == doctest::Approx(1.0).epsilon(1e-9));

    Relation half = rel;
    for (auto& q : half.qs) q *= Rational(1, 2);
    CHECK_THROWS_AS(build_obstruction(p, half, 2), std::invalid_argument);
    CHECK_NOTHROW(build_obstruction(p, half, 101));
    CHECK_THROWS_AS(build_obstruction(p, Relation{{Y, Y, Y, Y}}, n), std::invalid_argument);
    CHECK_THROWS_AS(build_obstruction(p, rel, n, 101), std::invalid_argument);
}

TEST_CASE("true complexity probe")
{
    const Progression p({Y, Y2, YSQ});
    const ProbeTable table = true_complexity_probe(p, 0, 2, 4, 61, 17);
    REQUIRE(table.relation.has_value());
    CHECK(*table.relation->qs[0].degree() == 2);
    REQUIRE(table.rows.size() == 6);
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(table.rows[k].kind == "random");
        CHECK(table.rows[k].norm < 1.0);
    }
    CHECK(table.rows[4].kind == "obstruction");
    CHECK(table.rows[4].count_abs == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(table.rows[5].kind == "zero");
    CHECK(table.rows[5].count_abs == 0.0);
}

TEST_CASE("subsets and residue tables")
{
    const Subset a = Subset::random(1000, 0.3, 123);
    CHECK(a.density() > 0.25);
    CHECK(a.density() < 0.35);
    CHECK(Subset::random(1000, 0.3, 123).member == a.member);
    CHECK(residue_table(poly({0, 0, 1}), 7) == std::vector<std::size_t>{0, 1, 4, 2, 2, 4, 1});
    CHECK(residue_table(UniPoly::binomial(2) * Rational(-1), 5) == std::vector<std::size_t>{0, 0, 4, 2, 4});
    CHECK(is_prime(101));
    CHECK_FALSE(is_prime(100));
    CHECK_FALSE(is_prime(1));
}
