#include <doctest.h>

#include "polyprog/weyl/closure.hpp"

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

RealExpr real(const char* text) { return RealExpr::parse(text); }

LinearForm constant_form(std::size_t params, long c = 0) { return {Rational(c), RationalVector(params)}; }

LinearForm param_form(std::size_t params, std::size_t p)
{
    LinearForm f = constant_form(params);
    f.coeffs[p] = 1;
    return f;
}

// g(n) = (a n, b C(n, 2)) on T^2.
PolySequence two_step(const char* a, const char* b)
{
    PolySequence seq;
    seq.s = 2;
    seq.params = {{"a", real(a)}, {"b", real(b)}};
    seq.g = {{constant_form(2), constant_form(2)},
             {param_form(2, 0), constant_form(2)},
             {constant_form(2), param_form(2, 1)}};
    return seq;
}

RationalVector unit(std::size_t d, std::initializer_list<std::size_t> ones, long scale = 1)
{
    RationalVector v(d);
    for (auto i : ones) v[i] += scale;
    return v;
}

RationalVector add(RationalVector a, const RationalVector& b)
{
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

bool same_span(const RationalMatrix& a, const RationalMatrix& b, std::size_t d)
{
    return subspace_of(a, b, d) && subspace_of(b, a, d);
}

}  // namespace

TEST_CASE("real expressions and turns")
{
    CHECK(real("sqrt2 + 1/3").to_string() == "sqrt2+1/3");
    CHECK(real("2*pi - 1/2").to_string() == "2*pi-1/2");
    CHECK(real("3/2").is_rational());
    CHECK(real("-golden").approx() == doctest::Approx(-(1 + std::sqrt(5.0)) / 2));
    CHECK(turn_to_double(real("sqrt2").turn()) == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-15));
    CHECK(turn_to_double(real("-1/4").turn()) == 0.75);
    CHECK((real("sqrt2 + 1/3") - real("sqrt2")).equals(Rational(1, 3)));
    CHECK_FALSE(real("sqrt3").equals(Rational(173, 100)));
    CHECK_THROWS_AS(real("sqrt11"), std::invalid_argument);
    CHECK_THROWS_AS(real("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(real("sqrt2 sqrt3"), std::invalid_argument);

    CHECK(wrap_distance(turn_from_rational(Rational(1, 10)), turn_from_rational(Rational(9, 10))) ==
          doctest::Approx(0.2));
    for (long long n : {-7LL, 0LL, 3LL, 1000LL, 4000000000LL})
        for (unsigned k = 0; k <= 5; ++k) {
            Integer z;
            mpz_bin_ui(z.get_mpz_t(), Integer(static_cast<long>(n)).get_mpz_t(), k);
            CHECK(binomial_mod_2_128(n, k) == turn_times(z, Turn(1)));
        }
}

TEST_CASE("orbit points")
{
    const WeylSystem circle(1, real("sqrt2"), {RealExpr(Rational(0))});
    CHECK(turn_to_double(orbit_point(circle, 3)[0]) == doctest::Approx(3 * std::sqrt(2.0) - 4).epsilon(1e-14));
    CHECK(orbit_point(circle, 0) == circle.base_point());

    const WeylSystem w(2, real("sqrt2"), {RealExpr(Rational(0)), RealExpr(Rational(0))});
    const Point p2 = orbit_point(w, 2);
    CHECK(turn_to_double(p2[0]) == doctest::Approx(2 * std::sqrt(2.0) - 2).epsilon(1e-14));
    CHECK(turn_to_double(p2[1]) == doctest::Approx(std::sqrt(2.0) - 1).epsilon(1e-14));

    // closed form against iterating T, and the cocycle identity
    const WeylSystem w3(3, real("golden"), {real("sqrt3"), real("1/7"), real("e")});
    Point it = w3.base_point();
    for (long long n = 0; n <= 50; ++n) {
        const Point closed = orbit_point(w3, n);
        for (std::size_t c = 0; c < 3; ++c) CHECK(wrap_distance(closed[c], it[c]) <= 1e-10);
        it = w3.apply(it);
    }
    std::mt19937_64 rng(5);
    for (int k = 0; k < 100; ++k) {
        const long long m = static_cast<long long>(rng() % 100000), n = static_cast<long long>(rng() % 40);
        Point p = orbit_point(w3, m);
        for (long long j = 0; j < n; ++j) p = w3.apply(p);
        const Point q = orbit_point(w3, m + n);
        for (std::size_t c = 0; c < 3; ++c) CHECK(wrap_distance(p[c], q[c]) <= 1e-9);
    }
    CHECK(orbit_point(w3, -5) == [&] {
        Point p = orbit_point(w3, 0);
        // T^{-5} a then five steps forward returns a
        Point q = orbit_point(w3, -5);
        for (int j = 0; j < 5; ++j) q = w3.apply(q);
        CHECK(q == p);
        return orbit_point(w3, -5);
    }());
}

TEST_CASE("factor projection")
{
    CHECK(factor_projection({{1, 0}}, 1) == Projection::retained);
    CHECK(factor_projection({{0, 1}}, 1) == Projection::vanishes);
    CHECK(factor_projection({{3, -2}}, 2) == Projection::retained);
    CHECK(factor_projection({{3, -2}}, 0) == Projection::vanishes);
    CHECK(factor_projection({{0, 0}}, 0) == Projection::retained);
    // idempotent, and multiplicative: a product survives exactly when both factors do
    for (long a : {0L, 1L, -2L})
        for (long b : {0L, 1L, 3L})
            for (long c : {0L, -1L})
                for (long d : {0L, 2L}) {
                    const TorusCharacter x{{a, b}}, y{{c, d}}, xy{{a + c, b + d}};
                    const bool both = factor_projection(x, 1) == Projection::retained &&
                                      factor_projection(y, 1) == Projection::retained;
                    if (both) CHECK(factor_projection(xy, 1) == Projection::retained);
                    if (factor_projection(x, 1) == Projection::retained &&
                        factor_projection(y, 1) == Projection::vanishes)
                        CHECK(factor_projection(xy, 1) == Projection::vanishes);
                    CHECK(factor_projection(x, 1) == factor_projection(x, 1));
                }
}

TEST_CASE("multiple averages")
{
    const Progression ap({Y, Y2});
    const WeylSystem w(1, real("sqrt2"), {real("sqrt3")});
    CHECK(std::abs(multiple_average(w, {{{0}}, {{0}}, {{0}}}, ap, 50) - 1.0) < 1e-12);

    // e(a + n a0) summed geometrically
    const Progression single({Y});
    const std::size_t N = 10000;
    const Complex avg = multiple_average(w, {{{0}}, {{1}}}, single, N, AverageMode::single);
    const double a0 = std::sqrt(2.0);
    const double bound = 1.0 / (static_cast<double>(N) * std::abs(std::sin(M_PI * a0)));
    CHECK(std::abs(avg) <= bound + 1e-12);
    CHECK(std::abs(avg) > 0.0);

    // the 3-term relation gives product one on the Kronecker system
    const WitnessRecord rec = lower_bound_witness(ap, Relation{{Y, poly({0, -2}), Y}}, w);
    CHECK(rec.symbolic_identity);
    CHECK(rec.max_deviation < 1e-9);
    for (std::size_t n : {1u, 7u, 40u}) CHECK(std::abs(multiple_average(w, rec.chars, ap, n) - 1.0) < 1e-9);
}

TEST_CASE("lower bound witness on an order-2 system")
{
    const Progression p({Y, Y2, YSQ});
    const Relation rel{{poly({0, 2, 1}), poly({0, 0, -2}), YSQ, poly({0, -2})}};
    const WeylSystem w(2, real("sqrt2"), {real("sqrt3"), real("sqrt5")});
    const WitnessRecord rec = lower_bound_witness(p, rel, w);
    CHECK(rec.symbolic_identity);
    CHECK(rec.samples == 1000);
    CHECK(rec.max_deviation < 1e-9);
    CHECK(rec.classification_matches);
    // Q = (u^2+2u, -2u^2, u^2, -2u) in binomial form: (2C(u,2)+3u, -4C(u,2)-2u, 2C(u,2)+u, -2u)
    CHECK(rec.multiplier == 1);
    CHECK(rec.chars[0].freq == std::vector<long long>{3, 2});
    CHECK(rec.chars[1].freq == std::vector<long long>{-2, -4});
    CHECK(rec.chars[2].freq == std::vector<long long>{1, 2});
    CHECK(rec.chars[3].freq == std::vector<long long>{-2, 0});
    CHECK(rec.kills_factor == std::vector<bool>{true, true, true, false});
    CHECK(std::abs(multiple_average(w, rec.chars, p, 30) - 1.0) < 1e-9);

    const WitnessRecord zero = lower_bound_witness(p, Relation{std::vector<UniPoly>(4)}, w);
    for (const auto& c : zero.chars) CHECK(c.is_trivial());

    Relation half = rel;
    for (auto& q : half.qs) q *= Rational(1, 2);
    CHECK(lower_bound_witness(p, half, w, 3).multiplier == 6);

    const WeylSystem circle(1, real("sqrt2"), {real("0")});
    CHECK_THROWS_AS(lower_bound_witness(p, rel, circle), std::invalid_argument);
    CHECK_THROWS_AS(lower_bound_witness(p, Relation{{Y, Y, Y, Y}}, w), std::invalid_argument);
}

TEST_CASE("dependencies")
{
    const PolySequence seq = two_step("sqrt2", "sqrt2 + 1/3");
    const Dependency d = parse_dependency("b - a = 1/3", seq);
    CHECK(d.coeffs == RationalVector{-1, 1});
    CHECK(d.value == Rational(1, 3));
    const Dependency e = parse_dependency("3*b = 3a + 1", seq);
    CHECK(e.coeffs == RationalVector{-3, 3});
    CHECK(e.value == 1);
    CHECK_THROWS_AS(parse_dependency("b - a = 1/2", seq), std::invalid_argument);
    CHECK_THROWS_AS(parse_dependency("b - c = 1/3", seq), std::invalid_argument);
    CHECK_THROWS_AS(parse_dependency("b - a", seq), std::invalid_argument);
    CHECK_THROWS_AS(parse_dependency("1 = 1", seq), std::invalid_argument);
    CHECK_THROWS_AS(closure_subspaces(Progression({Y}), seq, {d, Dependency{{-1, 1}, Rational(1, 2), "bad"}}),
                    std::invalid_argument);
}

TEST_CASE("closure of the inhomogeneous two-step example")
{
    const Progression p({Y, Y2, YSQ});
    const std::size_t D = 8;
    const RationalVector v11 = unit(D, {0, 1, 2, 3}), v12 = add(unit(D, {1}), unit(D, {2}, 2)), v13 = unit(D, {3});
    const RationalVector v21 = unit(D, {4, 5, 6, 7}), v22 = add(unit(D, {5}), unit(D, {6}, 2)), v23 = unit(D, {7}),
                         v24 = unit(D, {6});

    SUBCASE("independent parameters")
    {
        const PolySequence seq = two_step("sqrt2", "sqrt3");
        const AffineClosure c = closure_subspaces(p, seq, {});
        CHECK(c.dimension() == 7);
        CHECK(same_span(c.subspace_basis, {v11, v12, v13, v21, v22, v23, v24}, D));
        CHECK(same_span(c.g_p, c.subspace_basis, D));
        CHECK(same_span(c.k_basis, {v11, v12, v21, v22, v23}, D));
        CHECK(c.contains_k);
        CHECK(c.coset_shifts.size() == 1);
        CHECK(c.coset_bound == 1);
    }
    SUBCASE("declared rational offset")
    {
        const PolySequence seq = two_step("sqrt2", "sqrt2 + 1/3");
        const AffineClosure c = closure_subspaces(p, seq, {parse_dependency("b - a = 1/3", seq)});
        CHECK(c.dimension() == 6);
        CHECK(same_span(c.subspace_basis, {v11, v12, add(v13, v24), v21, v22, v23}, D));
        CHECK(c.g_p.size() == 7);
        CHECK(c.contains_k);
        CHECK(c.coset_bound == 3);
        // y^2 mod 3 takes the values 0 and 1, so two of the three translates are visited
        REQUIRE(c.coset_shifts.size() == 2);
        CHECK(is_zero(c.coset_shifts[0]));
        RationalVector third = v24;
        for (auto& x : third) x /= 3;
        RationalVector diff = c.coset_shifts[1];
        for (std::size_t i = 0; i < D; ++i) diff[i] -= third[i];
        // same translate: every annihilating character is integral on the difference
        for (const auto& eta : c.annihilators) {
            Rational dot = 0;
            for (std::size_t i = 0; i < D; ++i) dot += Rational(eta[i]) * diff[i];
            CHECK(is_integer(dot));
        }

        CHECK(closure_distance(seq, p, c, 200) < 1e-12);
        // ignoring the dependency puts the orbit off the 6-dimensional torus
        const PolySequence other = two_step("sqrt2", "sqrt2 + 1/5");
        CHECK(closure_distance(other, p, c, 50) > 1e-3);
    }
    SUBCASE("equal parameters")
    {
        const PolySequence seq = two_step("sqrt2", "sqrt2");
        const AffineClosure c = closure_subspaces(p, seq, {parse_dependency("a = b", seq)});
        CHECK(c.dimension() == 6);
        CHECK(c.coset_shifts.size() == 1);
    }
}

TEST_CASE("closure for Weyl systems")
{
    const WeylSystem w(2, real("sqrt2"), {real("0"), real("0")});
    SUBCASE("homogeneous progression")
    {
        const Progression p({Y, Y2, YCUBE});
        const AffineClosure c = closure_subspaces(p, w, {});
        CHECK(c.dimension() == c.g_p.size());
        CHECK(same_span(c.subspace_basis, c.g_p, 8));
        CHECK(same_span(c.k_basis, c.g_p, 8));
        CHECK(c.coset_shifts.size() == 1);
    }
    SUBCASE("blocks of G_{s'+1} sit inside K")
    {
        for (const auto& prog : {Progression({Y, Y2, YSQ}), Progression({Y, Y2, YCUBE}), Progression({Y})}) {
            const WeylSystem w3(3, real("sqrt2"), {real("0"), real("0"), real("0")});
            const AffineClosure c = closure_subspaces(prog, w3, {});
            CHECK(c.contains_k);
            const auto cx = algebraic_complexity(prog, default_cap(prog));
            const std::size_t T = prog.t() + 1;
            for (std::size_t i = 0; i < T; ++i)
                for (std::size_t coord = cx.values[i]; coord < 3; ++coord) {
                    RationalVector e(3 * T);
                    e[coord * T + i] = 1;
                    CHECK(in_span(c.k_basis, e, 3 * T));
                }
        }
    }
}

TEST_CASE("equidistribution tables")
{
    const Progression p({Y, Y2, YSQ});
    SUBCASE("dependent parameters")
    {
        const PolySequence seq = two_step("sqrt2", "sqrt2 + 1/3");
        const AffineClosure c = closure_subspaces(p, seq, {parse_dependency("b - a = 1/3", seq)});
        EquidistributionOptions opt;
        opt.radius = 1;
        opt.max_samples = 4096;
        const DiscrepancyTable t = equidistribution_test(seq, p, c, 300, opt);
        CHECK(t.rows[0].kind == "trivial");
        CHECK(t.rows[0].magnitude == 1.0);
        CHECK(t.characters == (729 - 1) / 2);
        CHECK(t.max_nontrivial < 0.2);
        // an annihilator row at three times a generator is constant along the orbit
        bool saw_one = false;
        for (const auto& r : t.rows)
            if (r.kind == "annihilator" && r.magnitude > 1 - 1e-9) saw_one = true;
        CHECK(saw_one);
    }
    SUBCASE("grid and thread independence")
    {
        const PolySequence seq = two_step("sqrt2", "sqrt3");
        const AffineClosure c = closure_subspaces(p, seq, {});
        EquidistributionOptions opt;
        opt.radius = 1;
        opt.max_samples = 100 * 100;
        const DiscrepancyTable a = equidistribution_test(seq, p, c, 100, opt);
        CHECK(a.full_grid);
        opt.threads = 3;
        const DiscrepancyTable b = equidistribution_test(seq, p, c, 100, opt);
        CHECK(a.max_nontrivial == b.max_nontrivial);
        CHECK(a.rows.back().magnitude == b.rows.back().magnitude);

        // direct recomputation of the largest row
        const auto& top = a.rows[1 + c.annihilators.size()];
        REQUIRE(top.kind == "nontrivial");
        CHECK(top.magnitude == doctest::Approx(a.max_nontrivial));
    }
}

TEST_CASE("homogeneous Weyl orbit equidistributes on G^P")
{
    const Progression p({Y, Y2, YCUBE});
    const WeylSystem w(2, real("sqrt2"), {real("0"), real("0")});
    const AffineClosure c = closure_subspaces(p, w, {});
    EquidistributionOptions opt;
    opt.radius = 3;
    opt.max_samples = 32768;
    opt.seed = 20240601;
    const DiscrepancyTable t = equidistribution_test(w.sequence(), p, c, 2000, opt);
    CHECK(t.characters == (std::size_t(823543) - 1) / 2);
    CHECK(t.max_nontrivial <= 0.05);
    CHECK(closure_distance(w.sequence(), p, c, 300) < 1e-12);
}
