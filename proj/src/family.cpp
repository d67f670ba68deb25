#include "polymap/family.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "polymap/errors.hpp"

namespace polymap {

CanonicalMap family_at(const CanonicalFamily& fam, double lambda) {
    if (!fam.contains(lambda)) throw Error("lambda outside the family domain");
    CanonicalMap c;
    c.degree_n = fam.degree;
    c.sign_s = fam.sign_s;
    c.nonzero_fixed_points.reserve(fam.x_exprs.size());
    for (std::size_t i = 0; i < fam.x_exprs.size(); ++i)
        c.nonzero_fixed_points.push_back(fam.x_exprs[i].eval_or_throw(lambda, static_cast<int>(i)));
    return c;
}

std::optional<CanonicalMap> try_family_at(const CanonicalFamily& fam, double lambda, std::string* reason) {
    try {
        return family_at(fam, lambda);
    } catch (const Error& e) {
        if (reason) *reason = e.what();
        return std::nullopt;
    }
}

namespace {

Series curve(const CanonicalFamily& fam, int k, const std::vector<double>& grid, bool want_multiplier) {
    if (k < 0 || k >= fam.degree) throw IndexOutOfRange("fixed point index out of range");
    Series out;
    out.reserve(grid.size());
    for (double lam : grid) {
        std::string why;
        auto c = try_family_at(fam, lam, &why);
        if (!c) {
            out.push_back({lam, std::nan(""), true});
            continue;
        }
        const double d = pdf(*c, k);
        out.push_back({lam, want_multiplier ? 1.0 + d : d, false});
    }
    return out;
}

}  // namespace

Series eigenvalue_curve(const CanonicalFamily& fam, int k, const std::vector<double>& grid) {
    return curve(fam, k, grid, true);
}

Series pdf_curve(const CanonicalFamily& fam, int k, const std::vector<double>& grid) {
    return curve(fam, k, grid, false);
}

RegionProfile region_profile(const CanonicalFamily& fam, int k, const std::vector<double>& grid,
                             const BandTable& table) {
    if (table.degree != fam.degree)
        throw UnsupportedDegree("band table degree does not match the family degree");
    RegionProfile profile;
    profile.grid = grid;
    Series d = pdf_curve(fam, k, grid);
    profile.types.reserve(d.size());
    for (const SeriesPoint& p : d) {
        profile.poisoned.push_back(p.poisoned ? 1 : 0);
        profile.pdf_values.push_back(p.value);
        profile.types.push_back(p.poisoned ? RegionType{} : band_lookup(table, p.value));
    }
    return profile;
}

std::string to_string(IntervalClass c) {
    switch (c) {
        case IntervalClass::Regular: return "regular";
        case IntervalClass::Reversal: return "reversal";
        case IntervalClass::RegularReversal: return "regular-reversal";
        case IntervalClass::ReversalRegular: return "reversal-regular";
        case IntervalClass::Constant: return "constant";
        case IntervalClass::Mixed: return "mixed";
    }
    return "?";
}

IntervalClass classify_interval(const RegionProfile& profile) {
    std::vector<int> ranks;
    for (std::size_t i = 0; i < profile.types.size(); ++i) {
        if (i < profile.poisoned.size() && profile.poisoned[i]) continue;
        ranks.push_back(profile.types[i].rank());
    }
    if (ranks.empty()) throw Error("classify_interval requires a nonempty profile");

    // Direction changes between consecutive distinct ranks.
    std::vector<int> dirs;
    for (std::size_t i = 1; i < ranks.size(); ++i) {
        const int d = ranks[i] - ranks[i - 1];
        if (d != 0) dirs.push_back(d > 0 ? 1 : -1);
    }
    if (dirs.empty()) return IntervalClass::Constant;

    int switches = 0;
    for (std::size_t i = 1; i < dirs.size(); ++i)
        if (dirs[i] != dirs[i - 1]) ++switches;

    if (switches == 0) return dirs.front() > 0 ? IntervalClass::Regular : IntervalClass::Reversal;
    if (switches == 1) return dirs.front() > 0 ? IntervalClass::RegularReversal : IntervalClass::ReversalRegular;
    return IntervalClass::Mixed;
}

namespace {

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

CanonicalFamily preset(const std::string& name, const PresetArgs& args) {
    CanonicalFamily fam;
    fam.name = name;
    if (name == "logistic") {
        fam.degree = 2;
        fam.sign_s = 1;
        fam.x_exprs = {ParamExpr::parse("lambda-1")};
        fam.domain_lo = 0.0;
        fam.domain_hi = 4.0;
    } else if (name == "harvest") {
        if (!args.r) throw UnknownPreset("harvest preset needs the growth rate r");
        const double r = *args.r;
        if (r <= 0.0) throw UnknownPreset("harvest preset needs r > 0");
        const std::string rs = format_number(r);
        // The family parameter is the harvest rate b.
        fam.degree = 2;
        fam.sign_s = 1;
        fam.x_exprs = {ParamExpr::parse("sqrt(" + rs + "*(" + rs + "-4*lambda))")};
        fam.domain_lo = 0.0;
        fam.domain_hi = r / 4.0;
    } else if (name == "bmap") {
        if (!args.b_expr) throw UnknownPreset("bmap preset needs the b(lambda) expression");
        fam.degree = 2;
        fam.sign_s = -1;
        fam.x_exprs = {ParamExpr::parse("-((" + *args.b_expr + ")+1)")};
        fam.domain_lo = 0.0;
        fam.domain_hi = 4.0;
    } else if (name == "ccm_exp") {
        fam.degree = 3;
        fam.sign_s = 1;
        fam.x_exprs = {ParamExpr::parse("1.817-exp(-lambda)"), ParamExpr::parse("-1.817+exp(-lambda)")};
        fam.domain_lo = 0.0;
        fam.domain_hi = 20.0;
    } else if (name == "quartic_demo") {
        fam.degree = 4;
        fam.sign_s = 1;
        fam.x_exprs = {ParamExpr::parse("lambda"), ParamExpr::parse("-lambda"), ParamExpr::parse("2*lambda")};
        fam.domain_lo = 0.0;
        fam.domain_hi = 2.0;
    } else {
        throw UnknownPreset("unknown preset '" + name + "'");
    }
    if (args.domain_lo) fam.domain_lo = *args.domain_lo;
    if (args.domain_hi) fam.domain_hi = *args.domain_hi;
    return fam;
}

std::vector<std::string> preset_names() { return {"logistic", "harvest", "bmap", "ccm_exp", "quartic_demo"}; }

CanonicalFamily canonical_search_slice(int degree) {
    CanonicalFamily fam;
    fam.sign_s = 1;
    if (degree == 2) {
        fam.degree = 2;
        fam.x_exprs = {ParamExpr::parse("-lambda")};
        fam.domain_lo = 0.0;
        fam.domain_hi = 4.0;
        fam.name = "cqm-search-slice";
    } else if (degree == 3) {
        fam.degree = 3;
        fam.x_exprs = {ParamExpr::parse("lambda"), ParamExpr::parse("-lambda")};
        fam.domain_lo = 0.0;
        fam.domain_hi = 2.5;
        fam.name = "ccm-search-slice";
    } else {
        throw UnsupportedDegree("built-in search slices exist for degrees 2 and 3; supply one for higher degrees");
    }
    return fam;
}

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 1) throw Error("linspace needs at least one point");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    if (n == 1) {
        out.push_back(lo);
        return out;
    }
    for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
    return out;
}

}  // namespace polymap
