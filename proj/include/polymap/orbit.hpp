#pragma once

#include <optional>
#include <vector>

#include "polymap/forms.hpp"

namespace polymap {

struct OrbitParams {
    int n_transient = 4096;
    int n_keep = 512;
    double escape_radius = 1e6;
    double detect_rel_tol = 1e-9;
    int p_max = 256;
};

enum class OrbitStatus { Converged, Aperiodic, Divergent };

struct OrbitResult {
    std::vector<double> tail;
    OrbitStatus status = OrbitStatus::Aperiodic;
    int period = 0;  // valid when Converged
    /// Mean of log|g'| over the tail; a rough chaos indicator, nothing more.
    double lyap_proxy = 0.0;
};

/// Iterate the map from x0, discard n_transient steps, keep n_keep, then run
/// period detection on the kept tail. Escape past escape_radius at any step
/// flags the orbit Divergent.
OrbitResult iterate_orbit(const CanonicalMap& c, double x0, const OrbitParams& params = {});

/// Smallest p <= p_max with max_i |tail[i+p] - tail[i]| within
/// rel_tol * (1 + max|tail|); nullopt when no period fits. The tail must hold
/// at least 2*p_max samples (TailTooShort otherwise).
std::optional<int> detect_period(const std::vector<double>& tail, double rel_tol, int p_max);

}  // namespace polymap
