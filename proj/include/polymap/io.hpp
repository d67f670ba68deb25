#pragma once

#include <string>
#include <vector>

#include "polymap/bifurcation.hpp"
#include "polymap/family.hpp"
#include "polymap/stability.hpp"

namespace polymap {

/// Format a double with 17 significant digits (round-trip exact for binary64).
std::string format_g17(double v);

/// CSV with header "lambda,seed_index,x"; one row per plotted orbit point.
std::string sweep_to_csv(const SweepDataset& data);

/// Sidecar description of a sweep: per-lambda periods, branch counts and flags.
std::string sweep_sidecar_json(const SweepDataset& data);

std::string estimate_to_json(int degree, const BifurcationEstimate& est);

std::string cascade_to_json(const CascadeTable& table);

/// Scatter plot of a sweep in a fixed 1200x800 viewport, points drawn as 1px
/// rects. `deterministic` suppresses the generation-time comment.
std::string sweep_to_svg(const SweepDataset& data, bool deterministic);

/// Throws Error on failure (callers map this to their I/O exit path).
void write_file(const std::string& path, const std::string& content);

/// Family specification file:
/// { "degree": n, "s": 1|-1, "fixed_points": ["expr", ...],
///   "domain": [lo, hi], "name": optional }
/// Unknown keys are rejected.
CanonicalFamily load_family_spec(const std::string& path);
CanonicalFamily parse_family_spec(const std::string& json_text);

/// Versioned band-table data file handling.
std::string band_tables_to_json(const std::vector<BandTable>& tables);
BandTable load_band_table(const std::string& path, int degree);

}  // namespace polymap
