#pragma once

#include <string>
#include <vector>

#include "polymap/family.hpp"
#include "polymap/orbit.hpp"

namespace polymap {

inline constexpr double kFeigenbaumDelta = 4.669201609;

/// Where orbits start. The default set follows Singer's theorem (critical
/// orbits fall into attracting cycles) and adds the two historical seeds 0.9
/// and -0.01 plus small perturbations of every fixed point.
struct SeedPolicy {
    bool critical_points = true;
    bool appendix_seeds = true;
    bool fixed_point_perturbations = true;
    double perturbation = 1e-3;
    std::vector<double> extra;
};

std::vector<double> make_seeds(const CanonicalMap& c, const SeedPolicy& policy);

struct SweepPoint {
    double lambda = 0.0;
    bool poisoned = false;
    std::string poison_reason;
    std::vector<double> seeds;
    std::vector<OrbitStatus> seed_status;
    std::vector<int> seed_periods;              // 0 when the seed did not converge
    std::vector<double> seed_lyap;
    std::vector<std::vector<double>> plotted;   // per seed; one cycle when converged, full tail otherwise
    int attracting_period = 0;                  // smallest converged period, 0 = none found
    int branch_count = 0;                       // distinct attractor points across converged seeds
    int distinct_cycles = 0;
    bool any_divergent = false;
    bool chaotic_heuristic = false;             // aperiodic with positive lyap proxy
};

struct SweepDataset {
    std::vector<double> grid;
    std::vector<SweepPoint> points;
};

/// Bifurcation-diagram sweep: per grid point, seed orbits, iterate, detect
/// periods, and record what a diagram would plot. Grid points are processed
/// in parallel (bounded by POLYMAP_THREADS) and assembled in grid order, so
/// the result is deterministic for fixed inputs.
SweepDataset sweep(const CanonicalFamily& fam, const std::vector<double>& grid, const SeedPolicy& seeds = {},
                   const OrbitParams& params = {});

struct BifurcationEstimate {
    int k = 0;
    double value = 0.0;       // |PDF| of the cascading fixed point at the transition
    double half_width = 0.0;  // bracket radius at termination, in PDF magnitude
    enum class Method { ClosedForm, Bisection } method = Method::ClosedForm;
    bool noise_floor = false;  // bracket hit orbit-detection resolution before bisect_tol
};

/// k-th bifurcation value of the cascade along `slice`. k = 1 (degrees 2, 3)
/// and k = 2 (degree 2) have closed forms (2 and sqrt(6)); everything else
/// bisects the parameter on the transition where the attractor's branch
/// count doubles from 2^(k-1) to 2^k, and reports |PDF| of the cascading
/// fixed point (index cascade_fp) at the bracket midpoint.
///
/// The bracket is in lambda. Throws BracketInvalid when the measured branch
/// counts at the ends do not straddle the requested transition.
BifurcationEstimate find_bifurcation_value(int degree, const CanonicalFamily& slice, int k, double bracket_lo,
                                           double bracket_hi, double bisect_tol = 1e-6,
                                           bool force_bisection = false, int cascade_fp = 0);

/// Predictor for the next value of a period-doubling sequence:
/// b_next = b_cur + (b_cur - b_prev) / delta.
double feigenbaum_predict(double b_prev, double b_cur);

/// Successive gap ratios delta_N = (v[N+1]-v[N]) / (v[N+2]-v[N+1]) for a
/// strictly monotone sequence of at least 3 bifurcation values.
std::vector<double> feigenbaum_delta(const std::vector<double>& values);

struct PeriodDoublingCheck {
    bool verified = false;
    int failed_condition = 0;  // 1, 2 or 3 when not verified
};

/// Numeric check of the period-doubling theorem hypotheses at lambda0 for
/// fixed point k_fp: (1) the fixed point persists across
/// [lambda0-fd_step, lambda0+fd_step]; (2) its multiplier is -1 to 1e-6;
/// (3) the lambda-derivative of (g^2)' at the frozen fixed point, by central
/// difference, is nonzero.
PeriodDoublingCheck verify_period_doubling(const CanonicalFamily& fam, int k_fp, double lambda0,
                                           double fd_step = 1e-4);

struct CascadeTable {
    int degree = 2;
    std::vector<BifurcationEstimate> levels;  // b_1 .. b_kmax
    BifurcationEstimate b_infinity;
};

/// Compute b_1..b_kmax along `slice` (bisection brackets are derived from
/// the Feigenbaum predictor), then extrapolate the accumulation value with
/// the geometric tail b_inf = b_K + (b_K - b_{K-1}) / (delta - 1).
/// cascade_fp is the fixed point whose |PDF| parameterizes the cascade.
CascadeTable estimate_b_infinity(int degree, const CanonicalFamily& slice, int k_max, double bisect_tol = 1e-6,
                                 int cascade_fp = 0);

/// Same, on the built-in search slice for degrees 2 and 3.
CascadeTable estimate_b_infinity(int degree, int k_max, double bisect_tol = 1e-6);

}  // namespace polymap
