#include "polymap/orbit.hpp"

#include <algorithm>
#include <cmath>

#include "polymap/errors.hpp"

namespace polymap {

OrbitResult iterate_orbit(const CanonicalMap& c, double x0, const OrbitParams& params) {
    if (params.n_keep < 2) throw Error("iterate_orbit needs n_keep >= 2");
    OrbitResult out;

    double x = x0;
    for (int i = 0; i < params.n_transient; ++i) {
        x = c.eval(x);
        if (!std::isfinite(x) || std::abs(x) > params.escape_radius) {
            out.tail.push_back(x);
            out.status = OrbitStatus::Divergent;
            return out;
        }
    }

    out.tail.reserve(static_cast<std::size_t>(params.n_keep));
    out.tail.push_back(x);
    for (int i = 1; i < params.n_keep; ++i) {
        x = c.eval(x);
        if (!std::isfinite(x) || std::abs(x) > params.escape_radius) {
            out.tail.push_back(x);
            out.status = OrbitStatus::Divergent;
            return out;
        }
        out.tail.push_back(x);
    }

    const Polynomial dg = c.expanded().derivative();
    double acc = 0.0;
    for (double v : out.tail) {
        const double d = std::abs(dg(v));
        acc += std::log(std::max(d, 1e-300));
    }
    out.lyap_proxy = acc / static_cast<double>(out.tail.size());

    const int p_max = std::min(params.p_max, params.n_keep / 2);
    if (auto p = detect_period(out.tail, params.detect_rel_tol, p_max)) {
        out.status = OrbitStatus::Converged;
        out.period = *p;
    } else {
        out.status = OrbitStatus::Aperiodic;
    }
    return out;
}

std::optional<int> detect_period(const std::vector<double>& tail, double rel_tol, int p_max) {
    if (p_max < 1) throw Error("detect_period needs p_max >= 1");
    if (static_cast<int>(tail.size()) < 2 * p_max)
        throw TailTooShort("tail must hold at least 2*p_max samples");

    double scale = 0.0;
    for (double v : tail) scale = std::max(scale, std::abs(v));
    const double tol = rel_tol * (1.0 + scale);

    const std::size_t len = tail.size();
    for (int p = 1; p <= p_max; ++p) {
        bool ok = true;
        for (std::size_t i = 0; i + static_cast<std::size_t>(p) < len; ++i) {
            if (std::abs(tail[i + static_cast<std::size_t>(p)] - tail[i]) > tol) {
                ok = false;
                break;
            }
        }
        if (ok) return p;
    }
    return std::nullopt;
}

}  // namespace polymap
