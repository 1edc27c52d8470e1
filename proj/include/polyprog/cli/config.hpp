#pragma once

// Configuration documents and Weyl scenario files.

#include "polyprog/cli/parser.hpp"
#include "polyprog/weyl/closure.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyprog {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Reads a JSON file; throws ConfigError on I/O or syntax errors.
nlohmann::json read_json(const std::filesystem::path& path);

struct Config {
    std::filesystem::path path;  // empty for an in-memory document
    nlohmann::json doc;

    /// Typed lookups by JSON pointer ("/count/N"); throw ConfigError naming the key.
    const nlohmann::json& at(const std::string& pointer) const;
    double number(const std::string& pointer) const;
    std::size_t count(const std::string& pointer) const;  // nonnegative integer
    std::uint64_t seed(const std::string& pointer) const;
    std::string text(const std::string& pointer) const;
    std::vector<std::size_t> counts(const std::string& pointer) const;  // list of positive integers
    std::optional<std::size_t> optional_count(const std::string& pointer) const;

    /// Relative paths resolve against the directory of the config file.
    std::filesystem::path resolve(const std::filesystem::path& p) const;
};

/// The config shipped with the sources, overridable with POLYPROG_CONFIG.
std::filesystem::path default_config_path();

/// Loads and validates every key the subcommands and the acceptance suite read.
Config load_config(const std::filesystem::path& path);
void validate_config(const Config& cfg);

struct Scenario {
    std::string name;
    ProgressionExpr progression;
    PolySequence sequence;
    std::vector<Dependency> dependencies;
    std::size_t N = 0;
    int radius = 3;
    std::size_t max_samples = 8192;
    nlohmann::json expect;  // optional "dimension" and "coset_bound"
};

/// Either {"sequence": {"s", "params": [{name, value}], "g": [[...]]}} or
/// {"weyl": {"s", "a0", "base": [...]}}, plus "progression", "dependencies", "N", "radius".
Scenario scenario_from_json(const nlohmann::json& doc);
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace polyprog
