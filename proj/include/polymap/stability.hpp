#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polymap/forms.hpp"

namespace polymap {

enum class StabilityKind {
    Attractor,
    Repellor,
    NonhyperbolicStable,
    NonhyperbolicUnstable,
    SemistableRight,  // nonhyperbolic, unstable, attracting from the right only
    SemistableLeft,
    Indeterminate,
};

std::string to_string(StabilityKind kind);

struct StabilityClass {
    StabilityKind kind;
    double multiplier;
    std::optional<double> pdf_value;
};

/// Classify the fixed point x_k of a canonical map. Hyperbolic points go by
/// the multiplier alone. At multiplier +1 the second/third derivatives of the
/// expanded polynomial decide (semistable side by the sign of f''); at -1 the
/// Schwarzian derivative decides, with Sf = 0 left Indeterminate.
StabilityClass classify_fixed_point(const CanonicalMap& c, int k, double hyperbolicity_tol = 1e-8);

/// Fixed point of a canonical map together with everything the analysis
/// needs to report about it.
struct FixedPointReport {
    double point;
    double multiplier;
    double pdf_value;
    StabilityClass stability;
};

struct TwoCycle {
    double points[2];
    double multiplier;  // 5 - x1^2 for the quadratic map
};

/// Closed-form 2-cycle of the canonical quadratic map with nonzero fixed
/// point x1: points (x1 + 2 +/- sqrt(x1^2 - 4))/2. Empty when |x1| < 2 (the
/// cycle is not real).
std::optional<TwoCycle> cqm_two_cycle(double x1);

/// Product of g'(p) along a closed orbit. Throws NotACycle when the orbit
/// does not close under the map within closure_tol (relative).
double cycle_multiplier(const CanonicalMap& c, const std::vector<double>& orbit, double closure_tol = 1e-6);

/// Singer bound on the number of attracting periodic orbits: number of real
/// critical points + 2, valid when the Schwarzian derivative is negative on a
/// sampled grid (512 points spanning the fixed points, critical-point
/// neighborhoods excluded). Empty when the sampled sign test fails.
std::optional<int> singer_bound(const CanonicalMap& c);

/// k comes before l in Sarkovskii's ordering: odds ascending, then 2*odds,
/// 4*odds, ..., finally powers of two descending. Irreflexive.
bool sarkovskii_precedes(int k, int l);

/// Bifurcation-value table for one degree: thresholds b_1 < b_2 < ... with
/// their uncertainties, plus the accumulation value b_inf. The k-th stability
/// band is the PDF interval (-b_{k+1}, -b_k].
struct BandTable {
    int degree = 2;
    std::vector<double> thresholds;
    std::vector<double> uncertainties;
    double b_inf = 0.0;
    double b_inf_uncertainty = 0.0;
    std::string provenance;
};

/// Built-in tables exist for degrees 2 and 3; anything else throws
/// UnsupportedDegree (tables for higher degrees must be computed first).
const BandTable& builtin_band_table(int degree);

struct RegionType {
    enum class Kind { Type, TypeInfinity, Outside };
    Kind kind = Kind::Outside;
    int k = 0;        // meaningful for Kind::Type
    bool boundary = false;  // within the table's uncertainty of a threshold,
                            // or past the table's deepest resolved band

    bool operator==(const RegionType&) const = default;
    /// Rank for monotonicity comparisons: Outside = 0, Type k = k,
    /// TypeInfinity = large.
    int rank() const;
};

/// Band membership of a PDF value: Type 1 on (-b_1, 0), Type k+1 on
/// (-b_{k+1}, -b_k], TypeInfinity at or below -b_inf, Outside at pdf >= 0.
/// Values within a threshold's uncertainty report the lower type with the
/// boundary flag set.
RegionType band_lookup(const BandTable& table, double pdf_value);

}  // namespace polymap
