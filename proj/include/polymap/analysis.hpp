#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polymap/forms.hpp"
#include "polymap/stability.hpp"

namespace polymap {

/// Everything the analyzer reports for one map: the three forms, the
/// conjugacy between them, per-fixed-point stability, and the Singer bound.
struct MapAnalysis {
    GeneralMap general;
    LinearFactorsMap lff;
    CanonicalMap canonical;
    ConjugacyTransform transform;
    std::vector<FixedPointReport> fixed_points;  // canonical indices 0..n-1
    std::optional<int> singer;
    double conjugacy_max_error = 0.0;
};

/// Run the full pipeline general -> linear factors -> canonical and classify
/// every fixed point. anchor_index < 0 picks the smallest fixed point.
MapAnalysis analyze_general_map(const GeneralMap& g, double tol = 1e-10, int anchor_index = -1);

/// Analyze a map given directly in canonical form (families evaluate here).
MapAnalysis analyze_canonical_map(const CanonicalMap& c, double tol = 1e-10);

std::string analysis_to_json(const MapAnalysis& a);

}  // namespace polymap
