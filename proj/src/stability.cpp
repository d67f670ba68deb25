#include "polymap/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polymap/errors.hpp"

namespace polymap {

std::string to_string(StabilityKind kind) {
    switch (kind) {
        case StabilityKind::Attractor: return "attractor";
        case StabilityKind::Repellor: return "repellor";
        case StabilityKind::NonhyperbolicStable: return "nonhyperbolic-stable";
        case StabilityKind::NonhyperbolicUnstable: return "nonhyperbolic-unstable";
        case StabilityKind::SemistableRight: return "semistable-right";
        case StabilityKind::SemistableLeft: return "semistable-left";
        case StabilityKind::Indeterminate: return "indeterminate";
    }
    return "?";
}

StabilityClass classify_fixed_point(const CanonicalMap& c, int k, double hyperbolicity_tol) {
    const double d = pdf(c, k);
    const double m = 1.0 + d;

    StabilityClass out{StabilityKind::Indeterminate, m, d};
    if (std::abs(std::abs(m) - 1.0) > hyperbolicity_tol) {
        out.kind = (std::abs(m) < 1.0) ? StabilityKind::Attractor : StabilityKind::Repellor;
        return out;
    }

    const Polynomial g = c.expanded();
    const double xk = c.all_fixed_points()[static_cast<std::size_t>(k)];
    // Derivative zero-tests scale with the expanded coefficients.
    const double deriv_eps = 1e-9 * (1.0 + g.inf_norm());

    if (m > 0.0) {  // multiplier ~ +1
        const double f2 = g.derivative(2)(xk);
        const double f3 = g.derivative(3)(xk);
        if (std::abs(f2) > deriv_eps) {
            out.kind = (f2 < 0.0) ? StabilityKind::SemistableRight : StabilityKind::SemistableLeft;
        } else if (f3 > deriv_eps) {
            out.kind = StabilityKind::NonhyperbolicUnstable;
        } else if (f3 < -deriv_eps) {
            out.kind = StabilityKind::NonhyperbolicStable;
        } else {
            out.kind = StabilityKind::Indeterminate;
        }
    } else {  // multiplier ~ -1
        const SchwarzianValue s = schwarzian(g, xk);
        if (s.kind == SchwarzianKind::Indeterminate) {
            out.kind = StabilityKind::Indeterminate;
        } else if (s.negative()) {
            out.kind = StabilityKind::NonhyperbolicStable;
        } else if (s.value > 0.0) {
            out.kind = StabilityKind::NonhyperbolicUnstable;
        } else {
            out.kind = StabilityKind::Indeterminate;  // Sf(p) = 0 is not covered by theory
        }
    }
    return out;
}

std::optional<TwoCycle> cqm_two_cycle(double x1) {
    const double disc = x1 * x1 - 4.0;
    if (disc < 0.0) return std::nullopt;
    const double sq = std::sqrt(disc);
    TwoCycle cyc;
    cyc.points[0] = 0.5 * (x1 + 2.0 + sq);
    cyc.points[1] = 0.5 * (x1 + 2.0 - sq);
    cyc.multiplier = 5.0 - x1 * x1;
    return cyc;
}

double cycle_multiplier(const CanonicalMap& c, const std::vector<double>& orbit, double closure_tol) {
    if (orbit.empty()) throw NotACycle("empty orbit");
    const std::size_t p = orbit.size();
    for (std::size_t i = 0; i < p; ++i) {
        const double next = c.eval(orbit[i]);
        const double expect = orbit[(i + 1) % p];
        if (std::abs(next - expect) > closure_tol * (1.0 + std::abs(expect)))
            throw NotACycle("orbit does not close under the map");
    }
    const Polynomial dg = c.expanded().derivative();
    double prod = 1.0;
    for (double x : orbit) prod *= dg(x);
    return prod;
}

std::optional<int> singer_bound(const CanonicalMap& c) {
    const Polynomial g = c.expanded();
    const Polynomial dg = g.derivative();

    std::vector<double> crit;
    if (dg.degree() >= 1) {
        RootSet rs = real_roots(dg, 1e-10);
        for (const auto& r : rs.real_roots) crit.push_back(r.value);
    }

    const std::vector<double> fps = c.all_fixed_points();
    const double lo = *std::min_element(fps.begin(), fps.end()) - 1.0;
    const double hi = *std::max_element(fps.begin(), fps.end()) + 1.0;
    const int samples = 512;
    const double guard = 1e-6 * (1.0 + std::max(std::abs(lo), std::abs(hi)));

    for (int i = 0; i < samples; ++i) {
        const double x = lo + (hi - lo) * (i + 0.5) / samples;
        bool near_critical = false;
        for (double cp : crit) {
            if (std::abs(x - cp) <= guard) {
                near_critical = true;
                break;
            }
        }
        if (near_critical) continue;
        const SchwarzianValue s = schwarzian(g, x);
        if (!s.negative()) return std::nullopt;
    }
    return static_cast<int>(crit.size()) + 2;
}

bool sarkovskii_precedes(int k, int l) {
    if (k < 1 || l < 1) throw Error("Sarkovskii ordering is defined on positive integers");
    if (k == l) return false;
    auto decompose = [](int m) {
        int a = 0;
        while (m % 2 == 0) {
            m /= 2;
            ++a;
        }
        return std::pair<int, int>{a, m};  // m = 2^a * odd
    };
    const auto [ka, kq] = decompose(k);
    const auto [la, lq] = decompose(l);
    const bool k_pow2 = (kq == 1), l_pow2 = (lq == 1);
    if (!k_pow2 && !l_pow2) return ka < la || (ka == la && kq < lq);
    if (!k_pow2 && l_pow2) return true;   // every non-power-of-two precedes the tail
    if (k_pow2 && !l_pow2) return false;
    return ka > la;  // powers of two descend
}

const BandTable& builtin_band_table(int degree) {
    static const BandTable quadratic{
        2,
        {2.0, 2.449489742783178, 2.5440, 2.5642, 2.56871, 2.56966, 2.569881},
        {0.0, 0.0, 5e-4, 2e-4, 4e-5, 1e-5, 5e-6},
        2.569941,
        5e-7,
        "canonical quadratic map cascade; b1 and b2 closed form, the rest measured",
    };
    static const BandTable cubic{
        3,
        {2.0, 3.0, 3.236, 3.288, 3.29925},
        {0.0, 5e-3, 2e-3, 5e-4, 2.5e-4},
        3.30228,
        5e-6,
        "canonical cubic map cascade on the symmetric slice x2 = -x1",
    };
    if (degree == 2) return quadratic;
    if (degree == 3) return cubic;
    throw UnsupportedDegree("built-in band tables exist for degrees 2 and 3 only");
}

int RegionType::rank() const {
    switch (kind) {
        case Kind::Outside: return 0;
        case Kind::Type: return k;
        case Kind::TypeInfinity: return std::numeric_limits<int>::max();
    }
    return 0;
}

RegionType band_lookup(const BandTable& table, double pdf_value) {
    if (!std::isfinite(pdf_value)) throw Error("band_lookup requires a finite PDF value");
    if (pdf_value >= 0.0) return {RegionType::Kind::Outside, 0, false};

    const double mag = -pdf_value;
    if (mag >= table.b_inf) {
        const bool near = std::abs(mag - table.b_inf) <= table.b_inf_uncertainty;
        return {RegionType::Kind::TypeInfinity, 0, near};
    }

    const std::size_t count = table.thresholds.size();
    // Within the uncertainty fuzz of a measured threshold b_k the lookup
    // cannot place the value, so report the lower band flagged.
    for (std::size_t i = 0; i < count; ++i) {
        if (table.uncertainties[i] > 0.0 && std::abs(mag - table.thresholds[i]) <= table.uncertainties[i])
            return {RegionType::Kind::Type, static_cast<int>(i) + 1, true};
    }
    // Band intervals are (-b_{k+1}, -b_k], i.e. mag in [b_k, b_{k+1}) is type k+1.
    for (std::size_t i = 0; i < count; ++i) {
        if (mag < table.thresholds[i]) return {RegionType::Kind::Type, static_cast<int>(i) + 1, false};
    }
    // Deeper than the last resolved threshold but short of b_inf: the table
    // cannot distinguish bands here.
    return {RegionType::Kind::Type, static_cast<int>(count) + 1, true};
}

}  // namespace polymap
