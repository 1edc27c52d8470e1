#include "polyprog/cli/config.hpp"

#include <cstdlib>
#include <fstream>

#ifndef POLYPROG_DEFAULT_CONFIG
#define POLYPROG_DEFAULT_CONFIG "config/default.json"
#endif

namespace polyprog {

namespace {

[[noreturn]] void bad(const std::string& pointer, const std::string& what)
{
    throw ConfigError("config " + pointer + ": " + what);
}

std::size_t as_count(const nlohmann::json& v, const std::string& pointer)
{
    if (!v.is_number_integer() || v.get<long long>() < 0) bad(pointer, "expected a nonnegative integer");
    return v.get<std::size_t>();
}

}  // namespace

nlohmann::json read_json(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string());
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

const nlohmann::json& Config::at(const std::string& pointer) const
{
    const nlohmann::json::json_pointer p(pointer);
    if (!doc.contains(p)) bad(pointer, "missing");
    return doc.at(p);
}

double Config::number(const std::string& pointer) const
{
    const auto& v = at(pointer);
    if (!v.is_number()) bad(pointer, "expected a number");
    return v.get<double>();
}

std::size_t Config::count(const std::string& pointer) const { return as_count(at(pointer), pointer); }

std::uint64_t Config::seed(const std::string& pointer) const
{
    const auto& v = at(pointer);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) bad(pointer, "expected a seed");
    return v.get<std::uint64_t>();
}

std::string Config::text(const std::string& pointer) const
{
    const auto& v = at(pointer);
    if (!v.is_string()) bad(pointer, "expected a string");
    return v.get<std::string>();
}

std::vector<std::size_t> Config::counts(const std::string& pointer) const
{
    const auto& v = at(pointer);
    std::vector<std::size_t> out;
    if (v.is_number()) {
        out.push_back(as_count(v, pointer));
    } else if (v.is_array() && !v.empty()) {
        for (const auto& e : v) out.push_back(as_count(e, pointer));
    } else {
        bad(pointer, "expected a positive integer or a nonempty list of them");
    }
    for (auto n : out)
        if (n == 0) bad(pointer, "entries must be positive");
    return out;
}

std::optional<std::size_t> Config::optional_count(const std::string& pointer) const
{
    const auto& v = at(pointer);
    if (v.is_null()) return std::nullopt;
    return as_count(v, pointer);
}

std::filesystem::path Config::resolve(const std::filesystem::path& p) const
{
    if (p.is_absolute() || path.empty()) return p;
    return path.parent_path() / p;
}

std::filesystem::path default_config_path()
{
    if (const char* env = std::getenv("POLYPROG_CONFIG"); env && *env) return env;
    return POLYPROG_DEFAULT_CONFIG;
}

Config load_config(const std::filesystem::path& path)
{
    Config cfg{path, read_json(path)};
    validate_config(cfg);
    return cfg;
}

void validate_config(const Config& cfg)
{
    if (cfg.text("/schema") != "polyprog.config/1") bad("/schema", "unsupported schema");
    cfg.count("/threads");
    cfg.seed("/seed");
    cfg.optional_count("/cap");
    if (cfg.number("/tolerance") <= 0) bad("/tolerance", "must be positive");
    cfg.count("/analyze/graded_k_max");
    cfg.count("/analyze/r_max");
    cfg.counts("/count/N");
    cfg.counts("/gowers/N");
    cfg.counts("/gowers/orders");
    cfg.text("/gowers/signal");
    cfg.counts("/popdiff/N");
    for (const char* key : {"/count/alpha", "/popdiff/alpha"}) {
        const double a = cfg.number(key);
        if (!(a > 0 && a <= 1)) bad(key, "must lie in (0, 1]");
    }
    if (cfg.number("/popdiff/epsilon") < 0) bad("/popdiff/epsilon", "must be nonnegative");
    cfg.count("/weyl/N");
    cfg.count("/weyl/radius");
    cfg.count("/weyl/max_samples");
    cfg.count("/weyl/top");
    if (!cfg.at("/acceptance").is_object()) bad("/acceptance", "expected an object");
    cfg.text("/acceptance/scenario_dir");
    for (const auto& [name, block] : cfg.at("/acceptance").items()) {
        if (!block.is_object()) continue;
        const std::string key = "/acceptance/" + name + "/max_seconds";
        if (cfg.number(key) <= 0) bad(key, "must be positive");
    }
}

namespace {

std::string string_field(const nlohmann::json& doc, const char* key)
{
    if (!doc.contains(key) || !doc[key].is_string()) throw ConfigError(std::string("scenario: '") + key + "' must be a string");
    return doc[key].get<std::string>();
}

std::size_t count_field(const nlohmann::json& doc, const char* key, std::size_t fallback)
{
    if (!doc.contains(key)) return fallback;
    return as_count(doc[key], std::string("scenario ") + key);
}

PolySequence sequence_from_json(const nlohmann::json& doc)
{
    PolySequence seq;
    seq.s = count_field(doc, "s", 0);
    if (!doc.contains("params") || !doc["params"].is_array()) throw ConfigError("scenario: sequence.params must be a list");
    for (const auto& p : doc["params"]) {
        if (!p.is_object()) throw ConfigError("scenario: each parameter needs a name and a value");
        const std::string name = string_field(p, "name");
        for (const auto& q : seq.params)
            if (q.name == name) throw ConfigError("scenario: parameter '" + name + "' declared twice");
        seq.params.push_back({name, RealExpr::parse(string_field(p, "value"))});
    }
    if (!doc.contains("g") || !doc["g"].is_array()) throw ConfigError("scenario: sequence.g must be a list of lists");
    for (const auto& row : doc["g"]) {
        if (!row.is_array()) throw ConfigError("scenario: sequence.g must be a list of lists");
        std::vector<LinearForm> forms;
        for (const auto& e : row) {
            if (!e.is_string()) throw ConfigError("scenario: sequence.g entries must be strings");
            forms.push_back(parse_linear_form(e.get<std::string>(), seq));
        }
        seq.g.push_back(std::move(forms));
    }
    seq.validate();
    return seq;
}

PolySequence weyl_from_json(const nlohmann::json& doc)
{
    const std::size_t s = count_field(doc, "s", 0);
    std::vector<RealExpr> base;
    if (!doc.contains("base") || !doc["base"].is_array()) throw ConfigError("scenario: weyl.base must be a list");
    for (const auto& b : doc["base"]) {
        if (!b.is_string()) throw ConfigError("scenario: weyl.base entries must be strings");
        base.push_back(RealExpr::parse(b.get<std::string>()));
    }
    return WeylSystem(s, RealExpr::parse(string_field(doc, "a0")), std::move(base)).sequence();
}

}  // namespace

Scenario scenario_from_json(const nlohmann::json& doc)
{
    if (!doc.is_object()) throw ConfigError("scenario: expected an object");
    if (doc.contains("schema") && doc["schema"] != "polyprog.scenario/1") throw ConfigError("scenario: unsupported schema");
    ProgressionExpr prog = parse_progression(string_field(doc, "progression"));
    const bool has_seq = doc.contains("sequence"), has_weyl = doc.contains("weyl");
    if (has_seq == has_weyl) throw ConfigError("scenario: give exactly one of 'sequence' and 'weyl'");
    Scenario sc{doc.value("name", std::string("unnamed")), std::move(prog),
                has_seq ? sequence_from_json(doc["sequence"]) : weyl_from_json(doc["weyl"]), {}, 2000, 3, 8192, {}};
    if (doc.contains("dependencies")) {
        if (!doc["dependencies"].is_array()) throw ConfigError("scenario: dependencies must be a list");
        for (const auto& d : doc["dependencies"]) {
            if (!d.is_string()) throw ConfigError("scenario: dependencies must be strings");
            sc.dependencies.push_back(parse_dependency(d.get<std::string>(), sc.sequence));
        }
    }
    sc.N = count_field(doc, "N", 2000);
    sc.radius = static_cast<int>(count_field(doc, "radius", 3));
    sc.max_samples = count_field(doc, "max_samples", 8192);
    if (doc.contains("expect")) sc.expect = doc["expect"];
    return sc;
}

Scenario load_scenario(const std::filesystem::path& path)
{
    try {
        return scenario_from_json(read_json(path));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path.string() + ": " + e.what());
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

}  // namespace polyprog
