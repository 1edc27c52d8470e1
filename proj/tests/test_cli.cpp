#include <doctest.h>

#include "polyprog/acceptance/oracles.hpp"
#include "polyprog/cli/commands.hpp"
#include "polyprog/cli/config.hpp"

#include <filesystem>
#include <random>
#include <sstream>

using namespace polyprog;

namespace {

UniPoly poly(std::initializer_list<long> c)
{
    std::vector<Rational> v;
    for (long x : c) v.emplace_back(x);
    return UniPoly(v);
}

ParseError parse_error(const std::string& text)
{
    try {
        parse_progression(text);
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("expected a parse error for " << text);
    return ParseError(ParseErrorKind::syntax, 0, "");
}

std::string spaces(std::mt19937_64& rng) { return std::string(rng() % 3, ' '); }

std::string coefficient_text(const Rational& c, const std::string& atom, std::mt19937_64& rng)
{
    const Rational a = abs(c);
    std::string s = a.get_num().get_str();
    if (!atom.empty()) {
        if (a == 1 && rng() % 2)
            s = atom;
        else
            s += (rng() % 2 ? "*" : "") + spaces(rng) + atom;
    }
    if (a.get_den() != 1) s += spaces(rng) + "/" + spaces(rng) + a.get_den().get_str();
    return s;
}

// p written in a randomly chosen form: monomials, Taylor atoms C(y,k), or a product y*(...).
std::string random_text(const UniPoly& p, std::mt19937_64& rng)
{
    std::vector<std::pair<Rational, std::string>> terms;
    switch (rng() % 3) {
    case 0:
        for (std::size_t k = 1; k < p.coefficients().size(); ++k)
            terms.emplace_back(p.coeff(k), k == 1 ? "y" : "y^" + std::to_string(k));
        break;
    case 1: {
        const auto b = to_binomial_basis(p);
        for (std::size_t k = 1; k < b.size(); ++k) terms.emplace_back(b[k], "C(y," + std::to_string(k) + ")");
        break;
    }
    default: {
        // p = y * q with q = p / y
        std::vector<Rational> q(p.coefficients().begin() + 1, p.coefficients().end());
        std::string inner;
        for (std::size_t k = 0; k < q.size(); ++k) {
            if (q[k] == 0) continue;
            const std::string atom = k == 0 ? "" : (k == 1 ? "y" : "y^" + std::to_string(k));
            inner += std::string(q[k] < 0 ? "-" : (inner.empty() ? "" : "+")) + spaces(rng) + coefficient_text(q[k], atom, rng);
        }
        return "y*(" + inner + ")";
    }
    }
    std::string out;
    for (const auto& [c, atom] : terms) {
        if (c == 0) continue;
        out += std::string(c < 0 ? "-" : (out.empty() ? "" : "+")) + spaces(rng) + coefficient_text(c, atom, rng) + spaces(rng);
    }
    return out;
}

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("progression examples")
{
    const auto a = parse_progression("x, x+y, x+2y, x+y^3");
    CHECK(a.progression == Progression({poly({0, 1}), poly({0, 2}), poly({0, 0, 0, 1})}));
    CHECK(a.canonical == "x, x+y, x+2y, x+y^3");

    const auto b = parse_progression("x, x+y^2, x+2y^2, x+y^3, x+2y^3");
    CHECK(b.progression.t() == 4);
    CHECK(b.progression.poly(4) == poly({0, 0, 0, 2}));

    // Taylor atoms, products, powers of sums, subtraction and fractions that clear
    const auto c = parse_progression(" x ,x + C(y,2)*2 , x-y, x + (y+1)^2 - 1, x + y^2/2 + y/2");
    CHECK(c.progression.poly(1) == poly({0, -1, 1}));
    CHECK(c.progression.poly(2) == poly({0, -1}));
    CHECK(c.progression.poly(3) == poly({0, 2, 1}));
    CHECK(c.progression.poly(4) == poly({0, 1}) * Rational(1, 2) + poly({0, 0, 1}) * Rational(1, 2));
    CHECK(c.canonical == "x, x-y, x-y+y^2, x+2y+y^2, x+y+C(y,2)");

    CHECK(parse_polynomial("u^2+2u", 'u') == poly({0, 2, 1}));
    CHECK(parse_polynomial("3C(y,3)") == UniPoly::binomial(3) * Rational(3));
}

TEST_CASE("progression errors")
{
    const ParseError half = parse_error("x, x+y/2");
    CHECK(half.kind == ParseErrorKind::non_integral);
    CHECK(half.position == 3);
    REQUIRE(half.witness);
    CHECK(half.witness->first == 1);
    CHECK(half.witness->second == Rational(1, 2));

    const ParseError dup = parse_error("x, x+2y, x+y, x+ y*2");
    CHECK(dup.kind == ParseErrorKind::duplicate);
    CHECK(dup.position == 14);

    CHECK(parse_error("x, x+y+1").kind == ParseErrorKind::constant_term);
    CHECK(parse_error("x, x+y-y").kind == ParseErrorKind::zero);
    CHECK(parse_error("x, x").kind == ParseErrorKind::syntax);

    const ParseError s = parse_error("x, x+y, x+2*y^");
    CHECK(s.kind == ParseErrorKind::syntax);
    CHECK(s.position == 14);
    CHECK(parse_error("y, x+y").position == 0);
    CHECK(parse_error("x, x+y)").position == 6);
    CHECK(parse_error("x; x+y").position == 1);
    CHECK(parse_error("x, x+C(y,)").position == 9);
    CHECK(parse_error("x, x+y/0").kind == ParseErrorKind::syntax);
    CHECK(parse_error("").kind == ParseErrorKind::syntax);
    CHECK_THROWS_AS(parse_polynomial("y + z"), ParseError);
}

TEST_CASE("parse and render round trip on random expressions")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t t = 1 + rng() % 4;
        std::vector<UniPoly> polys;
        while (polys.size() < t) {
            UniPoly p = oracle::random_integral_poly(rng, 1 + rng() % 4, 3);
            if (std::find(polys.begin(), polys.end(), p) == polys.end()) polys.push_back(std::move(p));
        }
        std::string text = "x";
        for (const auto& p : polys) {
            const std::string body = random_text(p, rng);
            text += "," + spaces(rng) + "x" + spaces(rng) + (rng() % 2 ? "+ " + body : "+(" + body + ")");
        }
        const ProgressionExpr e = parse_progression(text);
        INFO(text);
        CHECK(e.progression == Progression(polys));

        // the canonical form is a fixed point, and its terms are the input terms sorted by degree
        const ProgressionExpr again = parse_progression(e.canonical);
        CHECK(again.canonical == e.canonical);
        CHECK(render_canonical(again.progression) == e.canonical);
        std::vector<UniPoly> sorted = polys;
        std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.degree() < b.degree(); });
        CHECK(again.progression == Progression(sorted));
    }
}

TEST_CASE("config and scenarios")
{
    const Config cfg = load_config(default_config_path());
    CHECK(cfg.counts("/count/N").front() == 101);
    CHECK(cfg.number("/acceptance/closure/bound") == 0.05);
    CHECK_FALSE(cfg.optional_count("/cap"));

    Config broken = cfg;
    broken.doc["popdiff"]["alpha"] = 1.5;
    CHECK_THROWS_AS(validate_config(broken), ConfigError);
    broken = cfg;
    broken.doc["count"]["N"] = nlohmann::json::array();
    CHECK_THROWS_AS(validate_config(broken), ConfigError);
    broken = cfg;
    broken.doc["acceptance"]["closure"].erase("max_seconds");
    CHECK_THROWS_AS(validate_config(broken), ConfigError);

    const auto dir = cfg.resolve(cfg.text("/acceptance/scenario_dir"));
    const Scenario dep = load_scenario(dir / "two_step_dependent.json");
    CHECK(dep.sequence.params.size() == 2);
    REQUIRE(dep.dependencies.size() == 1);
    CHECK(dep.dependencies[0].value == Rational(1, 3));
    const Scenario hom = load_scenario(dir / "weyl_homogeneous.json");
    CHECK(hom.sequence.s == 2);
    CHECK(hom.sequence.params.size() == 1);

    nlohmann::json doc = read_json(dir / "two_step_dependent.json");
    doc["dependencies"] = {"b - a = 1/5"};
    CHECK_THROWS_AS(scenario_from_json(doc), std::invalid_argument);
    doc["dependencies"] = nlohmann::json::array();
    doc["weyl"] = {{"s", 1}, {"a0", "sqrt2"}, {"base", {"0"}}};
    CHECK_THROWS_AS(scenario_from_json(doc), ConfigError);
}

TEST_CASE("subcommands")
{
    SUBCASE("analyze")
    {
        const Run r = cli({"analyze", "x, x+y, x+2y, x+y^2"});
        REQUIRE(r.code == 0);
        const auto doc = nlohmann::json::parse(r.out);
        CHECK(doc["homogeneous"] == false);
        // the witness agrees with (u^2+2u, -2u^2, u^2, -2u) up to scaling and the 3-term relation
        std::vector<UniPoly> w;
        for (const auto& q : doc["witness"]["relation"]["Q"]) w.push_back(parse_polynomial(q.get<std::string>(), 'u'));
        const std::vector<UniPoly> known = {poly({0, 2, 1}), poly({0, 0, -2}), poly({0, 0, 1}), poly({0, -2})};
        const Rational scale = known[0].coeff(2) / w[0].coeff(2);
        const Rational ap = known[0].coeff(1) - scale * w[0].coeff(1);
        const std::vector<UniPoly> three = {poly({0, 1}), poly({0, -2}), poly({0, 1}), UniPoly()};
        for (std::size_t i = 0; i < 4; ++i) CHECK(w[i] * scale + three[i] * ap == known[i]);

        const Run h = cli({"analyze", "x,x+y,x+2y,x+y^3", "--format", "csv"});
        CHECK(h.code == 0);
        CHECK(h.out == "index,term,algebraic_complexity\n0,x,1\n1,x+y,1\n2,x+2y,1\n3,x+y^3,0\n");
        const auto hd = nlohmann::json::parse(cli({"analyze", "x,x+y,x+2y,x+y^3"}).out);
        CHECK(hd["homogeneous"] == true);
        CHECK(hd["algebraic_complexity"] == nlohmann::json({1, 1, 1, 0}));
    }
    SUBCASE("errors and exit status")
    {
        const Run bad = cli({"analyze", "x, x+y/2"});
        CHECK(bad.code == 2);
        CHECK(bad.err.find("not integral") != std::string::npos);
        CHECK(cli({"frobnicate"}).code == 2);
        CHECK(cli({"analyze", "x, x+y", "--format", "xml"}).code == 2);
        CHECK(cli({"analyze", "x, x+y", "--config", "/nonexistent.json"}).code == 2);
        // complexity above one has no linear model
        const Run c = cli({"count", "x, x+y, x+2y, x+y^2", "--N", "11"});
        CHECK(c.code == 1);
        CHECK(c.err.find("relation") != std::string::npos);
    }
    SUBCASE("reports are byte-stable with a fixed seed")
    {
        const std::vector<std::string> args = {"count", "x, x+y^2, x+2y^2, x+y^3, x+2y^3", "--N", "31,37", "--seed", "5"};
        const Run a = cli(args), b = cli(args);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        const auto doc = nlohmann::json::parse(a.out);
        CHECK(doc["rows"].size() == 2);
        CHECK(doc["schema"] == "polyprog.count/1");

        const Run g = cli({"gowers", "--N", "101", "--s", "2,3", "--format", "csv"});
        CHECK(g.code == 0);
        CHECK(g.out.rfind("N,s,method,norm\n101,2,fourier,", 0) == 0);

        const Run p = cli({"popdiff", "x, x+y^2, x+2y^2, x+y^3, x+2y^3", "--N", "41", "--epsilon", "0.02"});
        CHECK(p.code == 0);
        CHECK(nlohmann::json::parse(p.out)["reports"][0]["intersection_sizes"].size() == 41);

        const Run rel = cli({"relations", "x, x+y, x+2y", "--format", "csv"});
        CHECK(rel.out == "relation,Q_0,Q_1,Q_2\n0,u,-2u,u\n");
    }
    SUBCASE("weyl and output directory")
    {
        const auto dir = std::filesystem::temp_directory_path() / "polyprog_cli_test";
        std::filesystem::remove_all(dir);
        const auto scen = load_config(default_config_path()).resolve("../scenarios/two_step_dependent.json");
        const Run w = cli({"weyl", scen.string(), "--N", "200", "--radius", "1", "--out", dir.string()});
        CHECK(w.code == 0);
        const auto doc = read_json(dir / "weyl.json");
        CHECK(doc["closure"]["dimension"] == 6);
        CHECK(doc["closure"]["coset_shifts"].size() == 2);
        CHECK(doc["distance"].get<double>() < 1e-9);
        CHECK(doc["passed"] == true);
        std::filesystem::remove_all(dir);
    }
}
