#include "polymap/analysis.hpp"

#include <json.hpp>

#include "polymap/errors.hpp"

namespace polymap {

using nlohmann::json;

MapAnalysis analyze_general_map(const GeneralMap& g, double tol, int anchor_index) {
    MapAnalysis a;
    a.general = g;
    a.lff = to_linear_factors(g, tol);
    const int anchor = anchor_index < 0 ? 0 : anchor_index;  // fixed points are ascending
    auto [canonical, transform] = to_canonical(a.lff, anchor);
    a.canonical = canonical;
    a.transform = transform;
    for (int k = 0; k < canonical.degree_n; ++k) {
        FixedPointReport report;
        report.point = canonical.all_fixed_points()[static_cast<std::size_t>(k)];
        report.pdf_value = pdf(canonical, k);
        report.multiplier = 1.0 + report.pdf_value;
        report.stability = classify_fixed_point(canonical, k);
        a.fixed_points.push_back(report);
    }
    a.singer = singer_bound(canonical);
    a.conjugacy_max_error = verify_conjugacy(a.lff, canonical, transform).max_error;
    return a;
}

MapAnalysis analyze_canonical_map(const CanonicalMap& c, double tol) {
    return analyze_general_map(from_coefficients(c.expanded()), tol);
}

std::string analysis_to_json(const MapAnalysis& a) {
    json j;
    j["degree"] = a.general.degree();
    j["general"] = {{"q_coeffs", a.general.q.coeffs()},
                    {"f_coeffs", a.general.map_polynomial().coeffs()}};
    j["linear_factors"] = {{"s", a.lff.sign_s}, {"m_tilde", a.lff.m_tilde}, {"fixed_points", a.lff.fixed_points}};
    j["canonical"] = {{"s", a.canonical.sign_s}, {"nonzero_fixed_points", a.canonical.nonzero_fixed_points}};
    j["transform"] = {{"scale", a.transform.scale}, {"offset", a.transform.offset}};
    json fps = json::array();
    for (const FixedPointReport& r : a.fixed_points) {
        fps.push_back({{"point", r.point},
                       {"multiplier", r.multiplier},
                       {"pdf", r.pdf_value},
                       {"classification", to_string(r.stability.kind)}});
    }
    j["fixed_points"] = std::move(fps);
    if (a.singer)
        j["singer_bound"] = *a.singer;
    else
        j["singer_bound"] = nullptr;
    j["conjugacy_max_error"] = a.conjugacy_max_error;
    return j.dump(2) + "\n";
}

}  // namespace polymap
