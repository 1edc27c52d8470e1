#include "polyprog/progression/report.hpp"

#include <algorithm>

namespace polyprog {

namespace {

nlohmann::json rational_vector(const RationalVector& v)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto& q : v) {
        if (is_integer(q) && q.get_num().fits_slong_p())
            out.push_back(q.get_num().get_si());
        else
            out.push_back(to_string(q));
    }
    return out;
}

nlohmann::json poly_list(const std::vector<BiPoly>& ps)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto& p : ps) out.push_back(render(p));
    return out;
}

}  // namespace

nlohmann::json to_json(const Relation& r)
{
    nlohmann::json q = nlohmann::json::array();
    nlohmann::json d = nlohmann::json::array();
    for (const auto& c : r.qs) {
        q.push_back(render(c, 'u'));
        const Degree deg = c.degree();
        d.push_back(deg ? nlohmann::json(*deg) : nlohmann::json(nullptr));
    }
    return {{"Q", q}, {"degrees", d}};
}

nlohmann::json to_json(const GradedLevel& level, const CoeffSpace& coeffs)
{
    nlohmann::json tau = nlohmann::json::array();
    for (const auto& p : coeffs.tau) tau.push_back({{"Q", render(p.q)}, {"v", rational_vector(p.v)}});
    return {{"k", level.k},
            {"dim_W", level.dim_w()},
            {"dim_W_prime", level.dim_w_prime()},
            {"dim_W_c", level.w_c.size()},
            {"W", poly_list(level.w)},
            {"W_prime", poly_list(level.w_prime)},
            {"W_c", poly_list(level.w_c)},
            {"tau", tau},
            {"coefficient_space_consistent", coeffs.definitions_agree}};
}

nlohmann::json complexity_report(const Progression& prog, const ReportOptions& options)
{
    const std::size_t cap = options.cap.value_or(default_cap(prog));
    const auto complexity = algebraic_complexity(prog, cap);
    const auto hom = is_homogeneous(prog, cap);
    const std::size_t k_max = std::max<std::size_t>(1, std::min(options.graded_k_max, cap));
    const auto graded = graded_spaces(prog, k_max, cap);

    nlohmann::json report;
    report["schema"] = "polyprog.report/1";
    report["progression"] = prog.to_string();
    report["t"] = prog.t();
    report["cap"] = cap;
    report["stabilized"] = complexity.stabilized && hom.stabilized;
    report["homogeneous"] = hom.homogeneous;
    report["algebraic_complexity"] = complexity.values;

    nlohmann::json levels = nlohmann::json::array();
    for (const auto& level : graded.levels) levels.push_back(to_json(level, coeff_space(prog, level.k)));
    report["graded"] = levels;
    report["W_c"] = poly_list(graded.w_c_total);

    if (hom.homogeneous) {
        report["witness"] = nullptr;
        const auto vb = vandermonde_bound_check(prog, cap);
        report["vandermonde"] = {{"holds", vb.holds}, {"max_complexity", vb.max_complexity}, {"bound", vb.bound}};
        if (options.r_max > 0) {
            const auto el = is_eligible(prog, options.r_max, cap);
            nlohmann::json e{{"r_max", el.r_max}, {"eligible", el.eligible}};
            if (el.witness) e["witness"] = {el.witness->first, el.witness->second};
            if (!el.reason.empty()) e["reason"] = el.reason;
            report["eligibility"] = e;
        }
    } else {
        report["witness"] = {{"degree", *hom.witness_degree},
                             {"W_c_element", render(*hom.witness_polynomial)},
                             {"relation", to_json(*hom.witness_relation)},
                             {"relation_text", hom.witness_relation->to_string()}};
    }
    return report;
}

nlohmann::json relations_report(const Progression& prog, std::size_t cap)
{
    const auto rs = relation_space(prog, cap);
    nlohmann::json basis = nlohmann::json::array();
    for (const auto& r : rs.basis) basis.push_back(to_json(r));
    return {{"schema", "polyprog.relations/1"},
            {"progression", prog.to_string()},
            {"cap", cap},
            {"stabilized", rs.stabilized},
            {"dimension", rs.dimension()},
            {"basis", basis}};
}

}  // namespace polyprog
