#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polymap/expr.hpp"
#include "polymap/forms.hpp"
#include "polymap/stability.hpp"

namespace polymap {

/// One-parameter family of canonical maps: the nonzero fixed points are
/// expressions in lambda, the sign s is constant across the family.
struct CanonicalFamily {
    int degree = 2;
    int sign_s = 1;
    std::vector<ParamExpr> x_exprs;  // x_1(lambda) ... x_{n-1}(lambda)
    double domain_lo = 0.0;
    double domain_hi = 1.0;
    std::string name;

    bool contains(double lambda) const {
        const double slack = 1e-12 * (1.0 + std::max(std::abs(domain_lo), std::abs(domain_hi)));
        return lambda >= domain_lo - slack && lambda <= domain_hi + slack;
    }
};

/// Instantiate the family at one parameter value. Throws PoisonedExpression
/// when an x_i(lambda) hits a domain error.
CanonicalMap family_at(const CanonicalFamily& fam, double lambda);

/// Non-throwing variant; on failure returns nullopt and fills `reason`.
std::optional<CanonicalMap> try_family_at(const CanonicalFamily& fam, double lambda, std::string* reason = nullptr);

struct SeriesPoint {
    double lambda;
    double value;
    bool poisoned;
};
using Series = std::vector<SeriesPoint>;

/// Multiplier of fixed point k along the grid: phi_k(lambda).
Series eigenvalue_curve(const CanonicalFamily& fam, int k, const std::vector<double>& grid);

/// PDF of fixed point k along the grid: D_{n,k}(lambda) = phi_k - 1.
Series pdf_curve(const CanonicalFamily& fam, int k, const std::vector<double>& grid);

/// Region type of fixed point k per grid point, via band_lookup on the PDF.
struct RegionProfile {
    std::vector<double> grid;
    std::vector<RegionType> types;
    std::vector<unsigned char> poisoned;
    std::vector<double> pdf_values;
};

RegionProfile region_profile(const CanonicalFamily& fam, int k, const std::vector<double>& grid,
                             const BandTable& table);

enum class IntervalClass { Regular, Reversal, RegularReversal, ReversalRegular, Constant, Mixed };

std::string to_string(IntervalClass c);

/// Monotonicity class of the profile's region types: non-decreasing is
/// Regular, non-increasing Reversal, one rise-then-fall switch
/// RegularReversal (and the mirror), all equal Constant, anything else Mixed.
IntervalClass classify_interval(const RegionProfile& profile);

struct PresetArgs {
    std::optional<double> r;            // harvest growth rate
    std::optional<std::string> b_expr;  // bmap parametrization b(lambda)
    std::optional<double> domain_lo;
    std::optional<double> domain_hi;
};

/// Named families: "logistic" (x1 = lambda-1), "harvest" (parameter is the
/// harvest rate b, x1 = sqrt(r(r-4b))), "bmap" (x^2 - b(lambda) x routed
/// through the canonical form: x1 = -(b+1), s = -1), "ccm_exp" (symmetric
/// cubic tending to the accumulation band), "quartic_demo" (lambda, -lambda,
/// 2 lambda). Throws UnknownPreset otherwise.
CanonicalFamily preset(const std::string& name, const PresetArgs& args = {});

std::vector<std::string> preset_names();

/// The cascade-search slice used to measure bifurcation tables: degree 2
/// uses x1(lambda) = -lambda so the zero fixed point cascades; degree 3 uses
/// the symmetric pair (lambda, -lambda). |D_{n,0}| then equals lambda
/// (degree 2) or lambda^2 (degree 3).
CanonicalFamily canonical_search_slice(int degree);

/// Evenly spaced grid including both endpoints.
std::vector<double> linspace(double lo, double hi, int n);

}  // namespace polymap
