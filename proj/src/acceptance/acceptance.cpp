#include "polyprog/acceptance/acceptance.hpp"

#include "polyprog/acceptance/oracles.hpp"
#include "polyprog/cyclic/counting.hpp"
#include "polyprog/cyclic/gowers.hpp"
#include "polyprog/progression/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

namespace polyprog {

namespace {

std::string fmt(double v, const char* pattern = "%.3g")
{
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

Relation relation_from(const Config& cfg, const std::string& pointer)
{
    const auto& list = cfg.at(pointer);
    if (!list.is_array()) throw ConfigError("config " + pointer + ": expected a list of polynomials in u");
    Relation rel;
    for (const auto& q : list) {
        if (!q.is_string()) throw ConfigError("config " + pointer + ": expected a list of polynomials in u");
        rel.qs.push_back(parse_polynomial(q.get<std::string>(), 'u'));
    }
    return rel;
}

Progression progression_from(const Config& cfg, const std::string& pointer)
{
    return parse_progression(cfg.text(pointer)).progression;
}

bool same_rows(const nlohmann::json& tau, const std::vector<std::vector<long>>& expected)
{
    if (tau.size() != expected.size()) return false;
    for (std::size_t j = 0; j < expected.size(); ++j)
        if (tau[j]["v"] != nlohmann::json(expected[j])) return false;
    return true;
}

// --- 1 ---------------------------------------------------------------------

void classification(const Config& cfg, unsigned, CriterionResult& r)
{
    ReportOptions opt;
    opt.graded_k_max = 2;
    opt.r_max = cfg.count("/analyze/r_max");

    const Progression hom = parse_progression("x, x+y, x+2y, x+y^3").progression;
    const auto a = complexity_report(hom, opt);
    const bool a_ok = a["homogeneous"] == true && a["graded"][0]["dim_W"] == 3 && a["graded"][1]["dim_W"] == 4 &&
                      same_rows(a["graded"][0]["tau"], {{1, 1, 1, 1}, {0, 1, 2, 0}, {0, 0, 0, 1}}) &&
                      a["algebraic_complexity"] == nlohmann::json({1, 1, 1, 0});

    const Progression inh = parse_progression("x, x+y, x+2y, x+y^2").progression;
    const auto b = complexity_report(inh, opt);
    const auto graded = graded_spaces(inh, 2, default_cap(inh));
    const bool wc_ok = graded.w_c_total.size() == 1 && graded.w_c_total[0].terms().size() == 1 &&
                       graded.w_c_total[0].coeff(0, 2) != 0;
    const bool b_ok = b["homogeneous"] == false && wc_ok && b["graded"][0]["dim_W_prime"] == 2 &&
                      b["graded"][1]["dim_W_prime"] == 3 && b["algebraic_complexity"] == nlohmann::json({2, 2, 2, 1});

    r.passed = a_ok && b_ok;
    r.detail = {{"homogeneous_example", a}, {"inhomogeneous_example", b}};
    r.summary = std::string("x+y^3 example ") + (a_ok ? "matches" : "differs") + ", x+y^2 example " +
                (b_ok ? "matches" : "differs") + " (W^c = " + (wc_ok ? "span{y^2}" : "other") + ")";
}

// --- 2 ---------------------------------------------------------------------

// Mostly signed multiples of powers of y, which share degrees and so carry many relations.
Progression random_candidate(std::mt19937_64& rng, std::size_t max_t, std::size_t max_d)
{
    std::uniform_int_distribution<std::size_t> terms(1, max_t), deg(1, max_d);
    std::uniform_int_distribution<long> coef(1, 3);
    std::bernoulli_distribution monomial(0.75), negative(0.5);
    const std::size_t t = terms(rng);
    std::vector<UniPoly> polys;
    while (polys.size() < t) {
        UniPoly p = monomial(rng)
                        ? UniPoly::monomial(deg(rng), Rational(negative(rng) ? -coef(rng) : coef(rng)))
                        : oracle::random_integral_poly(rng, deg(rng), 2);
        if (std::find(polys.begin(), polys.end(), p) == polys.end()) polys.push_back(std::move(p));
    }
    return Progression(std::move(polys));
}


void relation_identities(const Config& cfg, unsigned, CriterionResult& r)
{
    const std::size_t count = cfg.count("/acceptance/relation_identities/progressions");
    const std::size_t max_t = cfg.count("/acceptance/relation_identities/max_terms");
    const std::size_t max_d = cfg.count("/acceptance/relation_identities/max_degree");
    std::mt19937_64 rng(cfg.seed("/seed"));
    std::uniform_int_distribution<std::size_t> terms(1, max_t);

    std::vector<Progression> corpus = {parse_progression("x, x+y, x+2y, x+y^2").progression,
                                       parse_progression("x, x+y, x+2y, x+y^3").progression,
                                       parse_progression("x, x+y^2, x+2y^2, x+y^3, x+2y^3").progression,
                                       oracle::arithmetic_progression(std::min<std::size_t>(4, max_t))};
    std::uniform_int_distribution<std::size_t> deg(1, max_d);
    while (corpus.size() < count) {
        switch (corpus.size() % 3) {
        case 0: corpus.push_back(oracle::random_progression(rng, terms(rng), max_d, 2)); break;
        case 1: corpus.push_back(random_candidate(rng, max_t, max_d)); break;
        default: {
            // distinct multiples of one polynomial: relations of every degree up to t-1
            const UniPoly p = oracle::random_integral_poly(rng, deg(rng), 2);
            const std::size_t t = terms(rng);
            std::vector<UniPoly> polys;
            for (std::size_t c = 1; c <= t; ++c) polys.push_back(p * Rational(static_cast<long>(c)));
            corpus.push_back(Progression(std::move(polys)));
        }
        }
    }

    std::size_t relations = 0, failures = 0;
    std::uniform_int_distribution<long> coord(-50, 50);
    for (const auto& prog : corpus) {
        const auto rs = relation_space(prog, default_cap(prog));
        for (const auto& rel : rs.basis) {
            ++relations;
            bool ok = rel.expand(prog).is_zero();
            for (int k = 0; k < 4 && ok; ++k)
                ok = oracle::relation_value(rel, prog, Rational(coord(rng), 7), Rational(coord(rng), 3)) == 0;
            if (!ok) ++failures;
        }
    }
    r.passed = corpus.size() >= 50 && relations > 0 && failures == 0;
    r.detail = {{"progressions", corpus.size()}, {"relations", relations}, {"failures", failures}};
    r.summary = std::to_string(relations) + " basis relations over " + std::to_string(corpus.size()) +
                " progressions, " + std::to_string(failures) + " nonzero";
}

// --- 3 ---------------------------------------------------------------------

void vandermonde(const Config& cfg, unsigned, CriterionResult& r)
{
    const std::size_t wanted = cfg.count("/acceptance/vandermonde/progressions");
    const std::size_t max_t = cfg.count("/acceptance/vandermonde/max_terms");
    const std::size_t max_d = cfg.count("/acceptance/vandermonde/max_degree");
    std::mt19937_64 rng(cfg.seed("/seed") + 3);

    std::size_t found = 0, rejected = 0, violations = 0, attempts = 0;
    nlohmann::json violating = nlohmann::json::array();
    while (found < wanted && attempts < 50 * wanted) {
        ++attempts;
        const Progression prog = random_candidate(rng, max_t, max_d);
        const std::size_t cap = default_cap(prog);
        if (!is_homogeneous(prog, cap).homogeneous) {
            ++rejected;
            continue;
        }
        ++found;
        const auto cx = algebraic_complexity(prog, cap);
        const std::size_t mx = *std::max_element(cx.values.begin(), cx.values.end());
        if (mx + 1 > std::max<std::size_t>(prog.t(), 1)) {
            ++violations;
            violating.push_back(prog.to_string());
        }
    }
    bool equality = true;
    nlohmann::json aps = nlohmann::json::array();
    for (std::size_t t = 1; t <= max_t; ++t) {
        const Progression ap = oracle::arithmetic_progression(t);
        const auto cx = algebraic_complexity(ap, default_cap(ap));
        const std::size_t mx = *std::max_element(cx.values.begin(), cx.values.end());
        equality = equality && mx == t - 1;
        aps.push_back({{"progression", ap.to_string()}, {"max_complexity", mx}});
    }
    r.passed = found == wanted && violations == 0 && equality;
    r.detail = {{"homogeneous", found}, {"rejected_inhomogeneous", rejected}, {"violations", violating},
                {"arithmetic_progressions", aps}};
    r.summary = std::to_string(found) + " homogeneous progressions, " + std::to_string(violations) +
                " above t-1; equality on APs " + (equality ? "holds" : "fails");
}

// --- 4 ---------------------------------------------------------------------

Signal random_unit_signal(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<Complex> v(n);
    for (auto& z : v) z = unit_phase(unit_interval(rng()));
    return Signal(n, std::move(v));
}

void gowers_suite(const Config& cfg, unsigned threads, CriterionResult& r)
{
    const std::string base = "/acceptance/gowers/";
    const auto moduli = cfg.counts(base + "moduli");
    const std::size_t signals = cfg.count(base + "signals");
    const double unit_tol = cfg.number(base + "unit_tolerance");
    const double slack = cfg.number(base + "monotonicity_slack");
    const double method_tol = cfg.number(base + "method_tolerance");
    const std::uint64_t seed = cfg.seed("/seed");

    double unit_err = 0;
    for (std::size_t n : moduli)
        for (unsigned s = 1; s <= 4; ++s)
            unit_err = std::max(unit_err, std::abs(gowers_norm(Signal::constant(n, 1), s, GowersMethod::fourier, threads) - 1));

    std::size_t monotone_failures = 0;
    double worst_gap = -1, method_err = 0;
    for (std::size_t n : moduli)
        for (std::size_t k = 0; k < signals; ++k) {
            const std::uint64_t sd = seed + 1000 * n + k;
            const Signal f = k % 2 ? random_sign_signal(n, sd) : random_unit_signal(n, sd);
            const double u1 = gowers_norm(f, 1, GowersMethod::fourier, threads);
            const double u2 = gowers_norm(f, 2, GowersMethod::fourier, threads);
            const double u3 = gowers_norm(f, 3, GowersMethod::fourier, threads);
            worst_gap = std::max({worst_gap, u1 - u2, u2 - u3});
            if (u1 > u2 + slack || u2 > u3 + slack) ++monotone_failures;
            method_err = std::max(method_err, std::abs(gowers_norm(f, 2, GowersMethod::recursion, threads) - u2));
        }

    const std::size_t qn = cfg.count(base + "quadratic_N");
    const Signal q = Signal::quadratic_phase(qn, 1);
    const double q2 = gowers_norm(q, 2, GowersMethod::fourier, threads);
    const double q3 = gowers_norm(q, 3, GowersMethod::fourier, threads);
    const double q2_err = std::abs(q2 - std::pow(static_cast<double>(qn), -0.25));
    const double q3_err = std::abs(q3 - 1);

    r.passed = unit_err <= unit_tol && monotone_failures == 0 && method_err <= method_tol &&
               q2_err <= cfg.number(base + "quadratic_u2_tolerance") && q3_err <= cfg.number(base + "quadratic_u3_tolerance");
    r.detail = {{"unit_error", unit_err},       {"monotonicity_failures", monotone_failures},
                {"largest_gap", worst_gap},     {"method_error", method_err},
                {"quadratic_u2", q2},           {"quadratic_u2_error", q2_err},
                {"quadratic_u3", q3},           {"quadratic_u3_error", q3_err}};
    r.summary = "|1|-1 " + fmt(unit_err) + ", monotonicity failures " + std::to_string(monotone_failures) +
                ", U2 methods " + fmt(method_err) + ", quadratic U2 err " + fmt(q2_err) + ", U3 err " + fmt(q3_err);
}

// --- 5 ---------------------------------------------------------------------

void counting_trend(const Config& cfg, unsigned threads, CriterionResult& r)
{
    const std::string base = "/acceptance/counting/";
    const Progression prog = progression_from(cfg, base + "progression");
    const auto moduli = cfg.counts(base + "N");
    const double alpha = cfg.number(base + "alpha"), bound = cfg.number(base + "bound");
    std::vector<double> diffs;
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t n : moduli) {
        const Subset a = Subset::random(n, alpha, cfg.seed("/seed"));
        const CountReport rep = compare_poly_vs_linear(a, prog, std::nullopt, threads);
        diffs.push_back(rep.difference);
        rows.push_back({{"N", n}, {"poly_count", rep.poly_count.real()}, {"linear_count", rep.linear_count.real()},
                        {"difference", rep.difference}});
    }
    const bool bounded = std::all_of(diffs.begin(), diffs.end(), [&](double d) { return d <= bound; });
    r.passed = moduli.size() >= 2 && diffs.back() < diffs.front() && bounded;
    r.detail = {{"rows", rows}};
    std::string s;
    for (std::size_t k = 0; k < moduli.size(); ++k)
        s += (k ? ", " : "") + std::string("N=") + std::to_string(moduli[k]) + " diff " + fmt(diffs[k]);
    r.summary = s;
}

// --- 6 ---------------------------------------------------------------------

void popular(const Config& cfg, unsigned threads, CriterionResult& r)
{
    const std::string base = "/acceptance/popular_differences/";
    const Progression prog = progression_from(cfg, base + "progression");
    const std::size_t n = cfg.count(base + "N");
    const Subset a = Subset::random(n, cfg.number(base + "alpha"), cfg.seed("/seed"));
    const PopDiffReport rep = popular_differences(a, prog, cfg.number(base + "epsilon"), threads);
    const bool zero = std::find(rep.qualifying.begin(), rep.qualifying.end(), 0) != rep.qualifying.end();
    r.passed = rep.fraction >= cfg.number(base + "min_fraction") && zero;
    r.detail = {{"alpha", rep.alpha}, {"threshold", rep.threshold}, {"fraction", rep.fraction},
                {"qualifying", rep.qualifying.size()}, {"zero_qualifies", zero}};
    r.summary = "fraction " + fmt(rep.fraction) + " with alpha " + fmt(rep.alpha) + ", n = 0 " +
                (zero ? "qualifies" : "does not qualify");
}

// --- 7 ---------------------------------------------------------------------

void obstruction(const Config& cfg, unsigned threads, CriterionResult& r)
{
    const std::string base = "/acceptance/obstruction/";
    const Progression prog = progression_from(cfg, base + "progression");
    const Relation rel = relation_from(cfg, base + "relation");
    const std::size_t n = cfg.count(base + "N");
    const auto f = build_obstruction(prog, rel, n);
    const Complex count = count_operator(f, prog, threads);
    const double mean = std::abs(f[0].mean());
    const auto a0 = algebraic_complexity(prog, 0, default_cap(prog)).first;
    const double u2 = gowers_norm(f[0], 2, GowersMethod::fourier, threads);
    r.passed = std::abs(count - Complex(1, 0)) <= cfg.number(base + "count_tolerance") &&
               mean <= cfg.number(base + "max_mean") && a0 == 2;
    r.detail = {{"count_real", count.real()}, {"count_imag", count.imag()}, {"mean_f0", mean}, {"A_0", a0},
                {"u2_f0", u2}};
    r.summary = "count " + fmt(count.real(), "%.12f") + ", |E f_0| " + fmt(mean) + ", ||f_0||_U2 " + fmt(u2) +
                ", A_0 = " + std::to_string(a0);
}

// --- 8 ---------------------------------------------------------------------

void witness(const Config& cfg, unsigned, CriterionResult& r)
{
    const std::string base = "/acceptance/witness/";
    const Progression prog = progression_from(cfg, base + "progression");
    const Relation rel = relation_from(cfg, base + "relation");
    std::vector<RealExpr> point;
    for (const auto& b : cfg.at(base + "base")) point.push_back(RealExpr::parse(b.get<std::string>()));
    const WeylSystem w(point.size(), RealExpr::parse(cfg.text(base + "a0")), point);
    const WitnessRecord rec = lower_bound_witness(prog, rel, w, 1, cfg.count(base + "samples"), cfg.seed("/seed"));
    bool kills = true;
    nlohmann::json chars = nlohmann::json::array();
    for (std::size_t i = 0; i < rec.chars.size(); ++i) {
        if (rec.last_coefficient_nonzero[i]) kills = kills && rec.kills_factor[i];
        chars.push_back(rec.chars[i].freq);
    }
    r.passed = rec.symbolic_identity && rec.max_deviation <= cfg.number(base + "tolerance") &&
               rec.classification_matches && kills;
    r.detail = {{"characters", chars}, {"max_deviation", rec.max_deviation}, {"samples", rec.samples},
                {"symbolic_identity", rec.symbolic_identity}, {"kills_factor", rec.kills_factor}};
    r.summary = "max |product - 1| " + fmt(rec.max_deviation) + " over " + std::to_string(rec.samples) +
                " points, factor classification " + (rec.classification_matches && kills ? "exact" : "wrong");
}

// --- 9 ---------------------------------------------------------------------

void closure(const Config& cfg, unsigned threads, CriterionResult& r)
{
    const std::string base = "/acceptance/closure/";
    const auto dir = cfg.resolve(cfg.text("/acceptance/scenario_dir"));
    const std::size_t n = cfg.count(base + "N");

    const Scenario dep = load_scenario(dir / cfg.text(base + "dependent"));
    const AffineClosure cd = closure_subspaces(dep.progression.progression, dep.sequence, dep.dependencies);
    const double dist = closure_distance(dep.sequence, dep.progression.progression, cd, n, threads);
    const bool dep_ok = cd.dimension() == 6 && cd.coset_bound == 3 && dist <= cfg.number(base + "distance");

    const Scenario ind = load_scenario(dir / cfg.text(base + "independent"));
    const AffineClosure ci = closure_subspaces(ind.progression.progression, ind.sequence, ind.dependencies);
    EquidistributionOptions opt;
    opt.radius = static_cast<int>(cfg.count(base + "radius"));
    opt.max_samples = cfg.count(base + "max_samples");
    opt.seed = cfg.seed("/seed");
    opt.threads = threads;
    const DiscrepancyTable table = equidistribution_test(ind.sequence, ind.progression.progression, ci, n, opt);
    const bool ind_ok = ci.dimension() == 7 && table.max_nontrivial <= cfg.number(base + "bound");

    r.passed = dep_ok && ind_ok;
    r.detail = {{"dependent", {{"dimension", cd.dimension()}, {"coset_bound", cd.coset_bound.get_str()},
                               {"visited_cosets", cd.coset_shifts.size()}, {"distance", dist}}},
                {"independent", {{"dimension", ci.dimension()}, {"characters", table.characters},
                                 {"samples", table.samples}, {"max_nontrivial", table.max_nontrivial}}}};
    r.summary = "dependent: dim " + std::to_string(cd.dimension()) + ", distance " + fmt(dist) +
                "; independent: dim " + std::to_string(ci.dimension()) + ", max over " +
                std::to_string(table.characters) + " characters " + fmt(table.max_nontrivial);
}

// --- 10 --------------------------------------------------------------------

void oracle_equivalence(const Config& cfg, unsigned, CriterionResult& r)
{
    const std::string base = "/acceptance/oracle/";
    const std::size_t max_t = cfg.count(base + "max_terms");
    const std::size_t max_d = cfg.count(base + "max_degree");
    const std::size_t max_cap = cfg.count(base + "max_cap");
    const long range = static_cast<long>(cfg.count(base + "coefficient_range"));

    // every integral polynomial of degree <= max_d with Taylor coefficients in [-range, range]
    std::vector<UniPoly> pool;
    std::vector<Rational> b(max_d + 1);
    std::function<void(std::size_t)> fill = [&](std::size_t k) {
        if (k > max_d) {
            UniPoly p = UniPoly::from_binomial_basis(b);
            if (!p.is_zero()) pool.push_back(std::move(p));
            return;
        }
        for (long c = -range; c <= range; ++c) {
            b[k] = c;
            fill(k + 1);
        }
    };
    fill(1);

    std::size_t progressions = 0, comparisons = 0, mismatches = 0;
    nlohmann::json bad = nlohmann::json::array();
    std::vector<std::size_t> idx;
    std::function<void(std::size_t)> choose = [&](std::size_t from) {
        if (!idx.empty()) {
            std::vector<UniPoly> polys;
            for (auto i : idx) polys.push_back(pool[i]);
            const Progression prog(std::move(polys));
            ++progressions;
            for (std::size_t cap = 1; cap <= max_cap; ++cap) {
                ++comparisons;
                const RelationSpace rs = relation_space(prog, cap);
                const RationalMatrix kernel = oracle::dense_grid_relations(prog, cap);
                RationalMatrix mine;
                bool inside = true;
                for (const auto& rel : rs.basis) {
                    mine.push_back(rel.coefficient_vector(cap));
                    inside = inside && oracle::vanishes_on_grid(prog, cap, mine.back());
                }
                const bool ok = inside && kernel.size() == rs.dimension() && oracle::rank(mine) == mine.size();
                if (!ok) {
                    ++mismatches;
                    if (bad.size() < 10) bad.push_back({{"progression", prog.to_string()}, {"cap", cap}});
                }
            }
        }
        if (idx.size() == max_t) return;
        for (std::size_t i = from; i < pool.size(); ++i) {
            idx.push_back(i);
            choose(i + 1);
            idx.pop_back();
        }
    };
    choose(0);
    r.passed = mismatches == 0 && comparisons > 0;
    r.detail = {{"progressions", progressions}, {"comparisons", comparisons}, {"mismatches", bad}};
    r.summary = std::to_string(comparisons) + " (progression, cap) pairs over " + std::to_string(progressions) +
                " progressions, " + std::to_string(mismatches) + " mismatches";
}

struct Entry {
    int id;
    const char* name;
    const char* key;
    void (*run)(const Config&, unsigned, CriterionResult&);
};

const Entry kCriteria[] = {
    {1, "worked-example classification", "classification", classification},
    {2, "relation identities", "relation_identities", relation_identities},
    {3, "Vandermonde bound", "vandermonde", vandermonde},
    {4, "Gowers norm suite", "gowers", gowers_suite},
    {5, "counting trend", "counting", counting_trend},
    {6, "popular differences", "popular_differences", popular},
    {7, "obstruction exactness", "obstruction", obstruction},
    {8, "Weyl lower-bound witness", "witness", witness},
    {9, "closure dichotomy", "closure", closure},
    {10, "relation oracle equivalence", "oracle", oracle_equivalence},
};

}  // namespace

std::vector<CriterionResult> run_acceptance(const Config& cfg, const AcceptanceOptions& opt)
{
    std::vector<CriterionResult> out;
    for (const auto& e : kCriteria) {
        if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), e.id) == opt.only.end()) continue;
        CriterionResult r;
        r.id = e.id;
        r.name = e.name;
        r.max_seconds = cfg.number(std::string("/acceptance/") + e.key + "/max_seconds");
        const auto start = std::chrono::steady_clock::now();
        try {
            e.run(cfg, opt.threads, r);
        } catch (const std::exception& ex) {
            r.passed = false;
            r.summary = std::string("error: ") + ex.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (r.seconds > r.max_seconds) {
            r.passed = false;
            r.summary += " (over the time limit)";
        }
        if (opt.on_result) opt.on_result(r);
        out.push_back(std::move(r));
    }
    return out;
}

std::string format_result(const CriterionResult& r)
{
    char head[96];
    std::snprintf(head, sizeof head, "%s %2d %-30s %8.2f s / %g s  ", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                  r.seconds, r.max_seconds);
    return head + r.summary;
}

nlohmann::json to_json(const CriterionResult& r)
{
    return {{"id", r.id},
            {"name", r.name},
            {"passed", r.passed},
            {"seconds", r.seconds},
            {"max_seconds", r.max_seconds},
            {"summary", r.summary},
            {"detail", r.detail}};
}

}  // namespace polyprog
