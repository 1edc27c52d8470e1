#include "polyprog/cli/commands.hpp"

#include "polyprog/acceptance/acceptance.hpp"
#include "polyprog/cli/config.hpp"
#include "polyprog/cyclic/counting.hpp"
#include "polyprog/cyclic/gowers.hpp"
#include "polyprog/progression/report.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace polyprog {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A table with a header row; cells are quoted only when they contain a comma or a quote.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string csv() const
    {
        std::ostringstream os;
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t k = 0; k < cells.size(); ++k) {
                if (k) os << ',';
                const std::string& c = cells[k];
                if (c.find_first_of(",\"\n") == std::string::npos) {
                    os << c;
                } else {
                    os << '"';
                    for (char ch : c) os << (ch == '"' ? "\"\"" : std::string(1, ch));
                    os << '"';
                }
            }
            os << '\n';
        };
        line(header);
        for (const auto& r : rows) line(r);
        return os.str();
    }
};

std::string num(double v)
{
    // shortest round-trip form, identical to the JSON output
    return nlohmann::json(v).dump();
}

std::string join(const std::vector<long long>& v, char sep = ' ')
{
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? std::string(1, sep) : "") + std::to_string(v[k]);
    return s;
}

nlohmann::json rational_json(const RationalVector& v)
{
    nlohmann::json a = nlohmann::json::array();
    for (const auto& q : v) a.push_back(to_string(q));
    return a;
}

struct Options {
    std::string config_path;
    std::optional<std::size_t> cap;
    std::vector<std::size_t> moduli;
    std::optional<std::uint64_t> seed;
    std::optional<double> epsilon;
    std::optional<double> alpha;
    std::optional<unsigned> threads;
    std::string out_dir;
    std::string format = "json";

    std::string progression;
    std::string subset_file;
    std::string signal;
    std::vector<unsigned> orders;
    std::string scenario;
    std::optional<int> radius;
    std::vector<int> only;
};

class Runner {
public:
    Runner(const Options& o, std::ostream& out, std::ostream& err) : o_(o), out_(out), err_(err)
    {
        cfg_ = load_config(o.config_path.empty() ? default_config_path() : std::filesystem::path(o.config_path));
        if (o.format != "json" && o.format != "csv") throw UsageError("--format must be json or csv");
    }

    unsigned threads() const
    {
        const unsigned t = o_.threads.value_or(static_cast<unsigned>(cfg_.count("/threads")));
        return t == 0 ? 1 : t;
    }
    std::uint64_t seed() const { return o_.seed.value_or(cfg_.seed("/seed")); }
    std::optional<std::size_t> cap() const { return o_.cap ? o_.cap : cfg_.optional_count("/cap"); }
    std::vector<std::size_t> moduli(const char* pointer) const { return o_.moduli.empty() ? cfg_.counts(pointer) : o_.moduli; }
    ProgressionExpr progression() const { return parse_progression(o_.progression); }

    void emit(const std::string& name, const nlohmann::json& doc, const Table& table) const
    {
        const bool csv = o_.format == "csv";
        const std::string body = csv ? table.csv() : doc.dump(2) + "\n";
        if (o_.out_dir.empty()) {
            out_ << body;
            return;
        }
        std::filesystem::create_directories(o_.out_dir);
        const auto path = std::filesystem::path(o_.out_dir) / (name + (csv ? ".csv" : ".json"));
        std::ofstream f(path);
        if (!f) throw std::runtime_error("cannot write " + path.string());
        f << body;
        out_ << "wrote " << path.string() << "\n";
    }

    int analyze() const
    {
        const auto expr = progression();
        ReportOptions opt;
        opt.cap = cap();
        opt.graded_k_max = cfg_.count("/analyze/graded_k_max");
        opt.r_max = cfg_.count("/analyze/r_max");
        nlohmann::json doc = complexity_report(expr.progression, opt);
        doc["canonical"] = expr.canonical;
        Table t{{"index", "term", "algebraic_complexity"}, {}};
        for (std::size_t i = 0; i <= expr.progression.t(); ++i)
            t.rows.push_back({std::to_string(i), i == 0 ? "x" : "x+" + render(expr.progression.poly(i), 'y'),
                              std::to_string(doc["algebraic_complexity"][i].get<std::size_t>())});
        emit("analyze", doc, t);
        return 0;
    }

    int relations() const
    {
        const auto expr = progression();
        const std::size_t c = cap().value_or(default_cap(expr.progression));
        const nlohmann::json doc = relations_report(expr.progression, c);
        Table t{{"relation"}, {}};
        for (std::size_t i = 0; i <= expr.progression.t(); ++i) t.header.push_back("Q_" + std::to_string(i));
        std::size_t k = 0;
        for (const auto& rel : doc["basis"]) {
            std::vector<std::string> row{std::to_string(k++)};
            for (const auto& q : rel["Q"]) row.push_back(q.get<std::string>());
            t.rows.push_back(std::move(row));
        }
        emit("relations", doc, t);
        return 0;
    }

    Subset subset(std::size_t n, double alpha) const
    {
        return o_.subset_file.empty() ? Subset::random(n, alpha, seed()) : Subset::read(o_.subset_file, n);
    }

    int count() const
    {
        const auto expr = progression();
        const double alpha = o_.alpha.value_or(cfg_.number("/count/alpha"));
        nlohmann::json rows = nlohmann::json::array();
        Table t{{"N", "density", "poly_count_re", "poly_count_im", "linear_count_re", "linear_count_im", "difference"}, {}};
        for (std::size_t n : moduli("/count/N")) {
            const Subset a = subset(n, alpha);
            CountReport rep;
            try {
                rep = compare_poly_vs_linear(a, expr.progression, cap(), threads());
            } catch (const ComplexityTooHigh& e) {
                err_ << "count: " << e.what() << "; relation " << e.relation.to_string() << "\n";
                return 1;
            }
            nlohmann::json q = nlohmann::json::array();
            for (const auto& p : rep.model.q) q.push_back(render(p, 'y'));
            nlohmann::json amat = nlohmann::json::array();
            for (const auto& row : rep.model.a) {
                nlohmann::json r = nlohmann::json::array();
                for (const auto& z : row) r.push_back(z.get_str());
                amat.push_back(r);
            }
            rows.push_back({{"N", n},
                            {"density", a.density()},
                            {"poly_count", {rep.poly_count.real(), rep.poly_count.imag()}},
                            {"linear_count", {rep.linear_count.real(), rep.linear_count.imag()}},
                            {"difference", rep.difference},
                            {"linear_model", {{"q", q}, {"a", amat}}}});
            t.rows.push_back({std::to_string(n), num(a.density()), num(rep.poly_count.real()), num(rep.poly_count.imag()),
                              num(rep.linear_count.real()), num(rep.linear_count.imag()), num(rep.difference)});
        }
        const nlohmann::json doc{{"schema", "polyprog.count/1"},
                                 {"progression", expr.progression.to_string()},
                                 {"alpha", alpha},
                                 {"seed", seed()},
                                 {"subset_file", o_.subset_file},
                                 {"rows", rows}};
        emit("count", doc, t);
        return 0;
    }

    Signal make_signal(const std::string& kind, std::size_t n) const
    {
        if (kind == "quadratic") return Signal::quadratic_phase(n, 1);
        if (kind == "sign") return random_sign_signal(n, seed());
        if (kind == "constant") return Signal::constant(n, 1);
        if (kind == "indicator") return subset(n, o_.alpha.value_or(0.5)).indicator();
        throw UsageError("unknown signal '" + kind + "' (quadratic, sign, constant or indicator)");
    }

    int gowers() const
    {
        const std::string kind = o_.signal.empty() ? (o_.subset_file.empty() ? cfg_.text("/gowers/signal") : "indicator")
                                                   : o_.signal;
        std::vector<unsigned> orders = o_.orders;
        if (orders.empty())
            for (auto s : cfg_.counts("/gowers/orders")) orders.push_back(static_cast<unsigned>(s));
        nlohmann::json rows = nlohmann::json::array();
        Table t{{"N", "s", "method", "norm"}, {}};
        for (std::size_t n : moduli("/gowers/N")) {
            const Signal f = make_signal(kind, n);
            for (unsigned s : orders)
                for (auto method : {GowersMethod::fourier, GowersMethod::recursion}) {
                    if (method == GowersMethod::recursion && s > 3) continue;
                    const char* name = method == GowersMethod::fourier ? "fourier" : "recursion";
                    const double v = gowers_norm(f, s, method, threads());
                    rows.push_back({{"N", n}, {"s", s}, {"method", name}, {"norm", v}});
                    t.rows.push_back({std::to_string(n), std::to_string(s), name, num(v)});
                }
        }
        emit("gowers", {{"schema", "polyprog.gowers/1"}, {"signal", kind}, {"seed", seed()}, {"rows", rows}}, t);
        return 0;
    }

    int popdiff() const
    {
        const auto expr = progression();
        const double alpha = o_.alpha.value_or(cfg_.number("/popdiff/alpha"));
        const double eps = o_.epsilon.value_or(cfg_.number("/popdiff/epsilon"));
        nlohmann::json reports = nlohmann::json::array();
        Table t{{"N", "n", "intersection_size", "qualifies"}, {}};
        for (std::size_t n : moduli("/popdiff/N")) {
            const PopDiffReport rep = popular_differences(subset(n, alpha), expr.progression, eps, threads());
            reports.push_back({{"N", n},
                               {"alpha", rep.alpha},
                               {"epsilon", rep.epsilon},
                               {"threshold", rep.threshold},
                               {"fraction", rep.fraction},
                               {"qualifying", rep.qualifying},
                               {"intersection_sizes", rep.intersection_sizes}});
            std::vector<bool> q(n, false);
            for (auto k : rep.qualifying) q[k] = true;
            for (std::size_t k = 0; k < n; ++k)
                t.rows.push_back({std::to_string(n), std::to_string(k), std::to_string(rep.intersection_sizes[k]),
                                  q[k] ? "1" : "0"});
        }
        emit("popdiff",
             {{"schema", "polyprog.popdiff/1"}, {"progression", expr.progression.to_string()}, {"seed", seed()},
              {"reports", reports}},
             t);
        return 0;
    }

    int weyl() const
    {
        if (o_.scenario.empty()) throw UsageError("weyl: a scenario file is required");
        const Scenario sc = load_scenario(o_.scenario);
        const Progression& prog = sc.progression.progression;
        const AffineClosure c = closure_subspaces(prog, sc.sequence, sc.dependencies);
        const std::size_t n = o_.moduli.empty() ? sc.N : o_.moduli.front();
        EquidistributionOptions opt;
        opt.radius = o_.radius.value_or(sc.radius);
        opt.max_samples = sc.max_samples;
        opt.seed = seed();
        opt.top = cfg_.count("/weyl/top");
        opt.threads = threads();
        const DiscrepancyTable table = equidistribution_test(sc.sequence, prog, c, n, opt);
        const double dist = closure_distance(sc.sequence, prog, c, n, threads());

        bool ok = c.contains_k;
        nlohmann::json checks = nlohmann::json::object();
        if (sc.expect.contains("dimension")) {
            const bool pass = sc.expect["dimension"] == c.dimension();
            checks["dimension"] = pass;
            ok = ok && pass;
        }
        if (sc.expect.contains("coset_bound")) {
            const bool pass = sc.expect["coset_bound"] == c.coset_bound.get_si();
            checks["coset_bound"] = pass;
            ok = ok && pass;
        }

        nlohmann::json basis = nlohmann::json::array(), ann = nlohmann::json::array(), shifts = nlohmann::json::array();
        for (const auto& v : c.subspace_basis) basis.push_back(rational_json(v));
        for (const auto& row : c.annihilators) {
            nlohmann::json r = nlohmann::json::array();
            for (const auto& z : row) r.push_back(z.get_str());
            ann.push_back(r);
        }
        for (const auto& v : c.coset_shifts) shifts.push_back(rational_json(v));
        nlohmann::json declared = nlohmann::json::array();
        for (const auto& d : c.declared) declared.push_back(d.text);
        nlohmann::json rows = nlohmann::json::array();
        Table t{{"kind", "frequency", "magnitude", "phase"}, {}};
        for (const auto& r : table.rows) {
            rows.push_back({{"kind", r.kind}, {"freq", r.freq}, {"magnitude", r.magnitude}, {"phase", r.phase}});
            t.rows.push_back({r.kind, join(r.freq), num(r.magnitude), num(r.phase)});
        }
        const nlohmann::json doc{
            {"schema", "polyprog.weyl/1"},
            {"scenario", sc.name},
            {"progression", prog.to_string()},
            {"closure",
             {{"ambient", c.ambient},
              {"dimension", c.dimension()},
              {"subspace_basis", basis},
              {"annihilators", ann},
              {"coset_shifts", shifts},
              {"coset_bound", c.coset_bound.get_str()},
              {"declared", declared},
              {"contains_K", c.contains_k}}},
            {"distance", dist},
            {"table",
             {{"N", table.N},
              {"samples", table.samples},
              {"full_grid", table.full_grid},
              {"radius", table.radius},
              {"characters", table.characters},
              {"max_nontrivial", table.max_nontrivial},
              {"rows", rows}}},
            {"checks", checks},
            {"passed", ok}};
        emit("weyl", doc, t);
        return ok ? 0 : 1;
    }

    int verify() const
    {
        AcceptanceOptions opt;
        opt.only = o_.only;
        opt.threads = threads();
        opt.on_result = [&](const CriterionResult& r) { out_ << format_result(r) << std::endl; };
        const auto results = run_acceptance(cfg_, opt);
        std::size_t passed = 0;
        nlohmann::json list = nlohmann::json::array();
        Table t{{"id", "name", "passed", "seconds", "summary"}, {}};
        for (const auto& r : results) {
            passed += r.passed;
            list.push_back(to_json(r));
            t.rows.push_back({std::to_string(r.id), r.name, r.passed ? "1" : "0", num(r.seconds), r.summary});
        }
        out_ << passed << "/" << results.size() << " criteria passed\n";
        if (!o_.out_dir.empty())
            emit("verify", {{"schema", "polyprog.verify/1"}, {"passed", passed}, {"total", results.size()}, {"results", list}},
                 t);
        return passed == results.size() ? 0 : 1;
    }

private:
    const Options& o_;
    std::ostream& out_;
    std::ostream& err_;
    Config cfg_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Algebraic relations, counting operators and orbit closures for polynomial progressions", "polyprog"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand
    Options o;
    app.add_option("--config", o.config_path, "configuration file");
    app.add_option("--cap", o.cap, "degree cap for relation spaces");
    app.add_option("--N", o.moduli, "modulus or comma-separated schedule")->delimiter(',');
    app.add_option("--seed", o.seed, "random seed");
    app.add_option("--epsilon", o.epsilon, "popular-difference slack");
    app.add_option("--alpha", o.alpha, "density of random subsets")->check(CLI::Range(0.0, 1.0));
    app.add_option("--threads", o.threads, "worker threads");
    app.add_option("--out", o.out_dir, "write reports into this directory");
    app.add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    auto with_prog = [&](CLI::App* sub) { sub->add_option("progression", o.progression, "e.g. \"x, x+y, x+2y, x+y^2\"")->required(); };
    CLI::App* analyze = app.add_subcommand("analyze", "homogeneity, complexities and graded spaces");
    with_prog(analyze);
    CLI::App* relations = app.add_subcommand("relations", "basis of the relation space");
    with_prog(relations);
    CLI::App* count = app.add_subcommand("count", "polynomial against linear counts over the N schedule");
    with_prog(count);
    count->add_option("--subset", o.subset_file, "subset file, one residue per line");
    CLI::App* gowers = app.add_subcommand("gowers", "Gowers norm table");
    gowers->add_option("--signal", o.signal, "quadratic, sign, constant or indicator");
    gowers->add_option("--subset", o.subset_file, "subset file for the indicator signal");
    gowers->add_option("--s", o.orders, "orders")->delimiter(',');
    CLI::App* popdiff = app.add_subcommand("popdiff", "popular common differences");
    with_prog(popdiff);
    popdiff->add_option("--subset", o.subset_file, "subset file, one residue per line");
    CLI::App* weyl = app.add_subcommand("weyl", "orbit closure and discrepancy table for a scenario");
    weyl->add_option("scenario", o.scenario, "scenario JSON file")->required();
    weyl->add_option("--radius", o.radius, "character radius");
    CLI::App* verify = app.add_subcommand("verify", "acceptance suite");
    verify->add_option("--only", o.only, "criterion numbers")->delimiter(',');

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "polyprog: " << e.what() << "\n" << "run 'polyprog --help' for usage\n";
        return 2;
    }

    try {
        const Runner run(o, out, err);
        if (analyze->parsed()) return run.analyze();
        if (relations->parsed()) return run.relations();
        if (count->parsed()) return run.count();
        if (gowers->parsed()) return run.gowers();
        if (popdiff->parsed()) return run.popdiff();
        if (weyl->parsed()) return run.weyl();
        return run.verify();
    } catch (const ParseError& e) {
        err << "polyprog: progression " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        err << "polyprog: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        err << "polyprog: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "polyprog: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "polyprog: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace polyprog
