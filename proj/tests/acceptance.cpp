// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.

#include "polyprog/acceptance/acceptance.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    using namespace polyprog;
    try {
        const Config cfg = load_config(argc > 1 ? std::filesystem::path(argv[1]) : default_config_path());
        AcceptanceOptions opt;
        opt.threads = static_cast<unsigned>(cfg.count("/threads"));
        opt.on_result = [](const CriterionResult& r) { std::cout << format_result(r) << std::endl; };
        const auto results = run_acceptance(cfg, opt);
        std::size_t passed = 0;
        for (const auto& r : results) passed += r.passed;
        std::cout << passed << "/" << results.size() << " criteria passed" << std::endl;
        return passed == results.size() ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "acceptance: " << e.what() << "\n";
        return 2;
    }
}
