#pragma once

#include "polyprog/progression/spaces.hpp"

#include <json.hpp>

namespace polyprog {

struct ReportOptions {
    std::optional<std::size_t> cap;  // default_cap when unset
    std::size_t graded_k_max = 2;    // clipped to the cap
    std::size_t r_max = 6;           // eligibility search depth; 0 disables it
};

nlohmann::json to_json(const Relation& r);
nlohmann::json to_json(const GradedLevel& level, const CoeffSpace& coeffs);

/// Aggregates homogeneity, complexities, graded spaces, tau vectors, the Vandermonde bound
/// and eligibility into one document tagged "polyprog.report/1".
nlohmann::json complexity_report(const Progression& prog, const ReportOptions& options = {});

/// Basis of the relation space as a document tagged "polyprog.relations/1".
nlohmann::json relations_report(const Progression& prog, std::size_t cap);

}  // namespace polyprog
